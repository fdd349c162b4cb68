//! Serialisable records for the JSON and CSV outputs.
//!
//! Every rational is written as `"P/Q"` text and every list follows the
//! canonical state order, so identical inputs give identical bytes.

use serde::{Deserialize, Serialize};

use yangian::amplitudes::AmplitudeKind;
use yangian::gt::{format_pattern, GTPattern};
use yangian::matrix::RationalMatrix;
use yangian::modes::ModeOperator;
use yangian::ratfunc::FactoredRatFunc;
use yangian::rational::{to_text, BigRat};
use yangian::verify::RelationReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub n: usize,
    pub p: usize,
    pub lambda: usize,
    pub epsilon: String,
    pub h: String,
    pub states: Vec<StateRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<AmplitudeRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<PsiRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<ModesRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub id: usize,
    pub pattern: String,
    pub free_entries: Vec<i64>,
}

impl StateRecord {
    pub fn new(id: usize, pattern: &GTPattern) -> Self {
        StateRecord {
            id,
            pattern: format_pattern(pattern),
            free_entries: pattern.free_entries(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplitudeRecord {
    pub state_id: usize,
    pub node: usize,
    #[serde(rename = "type")]
    pub type_index: usize,
    pub kind: String,
    pub target_id: usize,
    pub pole: String,
    pub value: String,
}

impl AmplitudeRecord {
    pub fn new(
        state_id: usize,
        node: usize,
        type_index: usize,
        kind: AmplitudeKind,
        target_id: usize,
        pole: &BigRat,
        value: &BigRat,
    ) -> Self {
        AmplitudeRecord {
            state_id,
            node,
            type_index,
            kind: kind.label().to_string(),
            target_id,
            pole: to_text(pole),
            value: to_text(value),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRecord {
    pub state_id: usize,
    pub node: usize,
    pub scalar: String,
    pub num_roots: Vec<String>,
    pub den_roots: Vec<String>,
}

impl PsiRecord {
    pub fn new(state_id: usize, node: usize, f: &FactoredRatFunc) -> Self {
        PsiRecord {
            state_id,
            node,
            scalar: to_text(f.scalar()),
            num_roots: f.num_roots().iter().map(to_text).collect(),
            den_roots: f.den_roots().iter().map(to_text).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModesRecord {
    pub cutoff: usize,
    pub operators: Vec<OperatorRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub kind: String,
    pub node: usize,
    pub mode: usize,
    /// Nonzero entries `(row, col, value)`; rows are target state ids.
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

pub fn sparse_entries(m: &RationalMatrix) -> Vec<EntryRecord> {
    let mut out = Vec::new();
    for row in 0..m.rows() {
        for col in 0..m.cols() {
            let v = m.get(row, col);
            if *v != yangian::rational::zero() {
                out.push(EntryRecord {
                    row,
                    col,
                    value: to_text(v),
                });
            }
        }
    }
    out
}

impl OperatorRecord {
    pub fn new(op: &ModeOperator) -> Self {
        OperatorRecord {
            kind: op.kind.label().to_string(),
            node: op.node,
            mode: op.mode,
            entries: sparse_entries(&op.matrix),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub suites: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_sign: Option<i64>,
    pub passed: bool,
    pub failures: usize,
    pub reports: Vec<ReportRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub suite: String,
    pub relation: String,
    pub detail: String,
    pub max_residual: String,
    pub pass: bool,
}

impl ReportRecord {
    pub fn new(suite: &str, r: &RelationReport) -> Self {
        ReportRecord {
            suite: suite.to_string(),
            relation: r.relation.clone(),
            detail: r.detail.clone(),
            max_residual: to_text(&r.max_residual),
            pass: r.pass,
        }
    }
}

/// Flat CSV row with columns `state_id, node, type, kind, value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub state_id: usize,
    pub node: usize,
    #[serde(rename = "type")]
    pub type_index: usize,
    pub kind: String,
    pub value: String,
}

impl Bundle {
    /// Rows of the flat table: one per free entry (`kind = entry`), one per
    /// amplitude (`E` or `F`, `type` is the atom type), one per root or
    /// scalar of a charge function (`psi_scalar`, `psi_num`, `psi_den`, with
    /// `type` the position in the root list) and one per nonzero mode
    /// operator entry (`kind` such as `e2`, `state_id` the column and `type`
    /// the row).
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        let mut rows = Vec::new();
        if self.amplitudes.is_none() && self.psi.is_none() && self.modes.is_none() {
            for s in &self.states {
                let pattern = yangian::gt::parse_pattern(self.n, self.p, self.lambda, &s.pattern)
                    .expect("bundle states are valid patterns");
                for k in 1..self.n {
                    let (a, b) = pattern.bounds(k);
                    for i in a..=b {
                        rows.push(CsvRow {
                            state_id: s.id,
                            node: k,
                            type_index: i,
                            kind: "entry".into(),
                            value: pattern.m(i, k).to_string(),
                        });
                    }
                }
            }
        }
        for a in self.amplitudes.iter().flatten() {
            rows.push(CsvRow {
                state_id: a.state_id,
                node: a.node,
                type_index: a.type_index,
                kind: a.kind.clone(),
                value: a.value.clone(),
            });
        }
        for p in self.psi.iter().flatten() {
            let row = |t: usize, kind: &str, value: &str| CsvRow {
                state_id: p.state_id,
                node: p.node,
                type_index: t,
                kind: kind.into(),
                value: value.into(),
            };
            rows.push(row(0, "psi_scalar", &p.scalar));
            for (t, r) in p.num_roots.iter().enumerate() {
                rows.push(row(t, "psi_num", r));
            }
            for (t, r) in p.den_roots.iter().enumerate() {
                rows.push(row(t, "psi_den", r));
            }
        }
        if let Some(m) = &self.modes {
            for op in &m.operators {
                for e in &op.entries {
                    rows.push(CsvRow {
                        state_id: e.col,
                        node: op.node,
                        type_index: e.row,
                        kind: format!("{}{}", op.kind, op.mode),
                        value: e.value.clone(),
                    });
                }
            }
        }
        rows
    }
}
