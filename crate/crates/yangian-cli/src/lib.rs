//! Command-line front end for the `yangian` crate: argument handling, the
//! JSON bundle and CSV tables.

pub mod args;
pub mod bundle;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use yangian::amplitudes::{amplitude_e, amplitude_f, psi_closed_form, AmplitudeKind};
use yangian::gt::{
    add_pole, enumerate_patterns, parse_pattern, rectangular_dimension, remove_pole, GTPattern,
};
use yangian::localization::{
    amplitudes_via_localization, localization_fixed_point, LocalizationConfig,
};
use yangian::modes::ModeAlgebra;
use yangian::quiver::EquivariantParams;
use yangian::rational::{parse, to_text};
use yangian::verify::{self, RelationReport};

use args::{Cli, Command, Common, Format, Method, Suite};
use bundle::{
    AmplitudeRecord, Bundle, ModesRecord, OperatorRecord, PsiRecord, ReportRecord, StateRecord,
    VerificationRecord,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Failure of a command before any verdict is reached.
#[derive(Debug)]
pub enum CliError {
    Domain(yangian::Error),
    Io(std::io::Error),
    Output(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Output(e) => write!(f, "output error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<yangian::Error> for CliError {
    fn from(e: yangian::Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Output of a command and whether every check in it passed.
pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(rendered) => {
            if let Err(e) = emit(common(&cli.command), &rendered.text) {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if rendered.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Dims(c) | Command::States(c) => c,
        Command::Psi(s) => &s.common,
        Command::Amplitudes(a) => &a.selection.common,
        Command::Modes(m) => &m.common,
        Command::Verify(v) => &v.common,
    }
}

fn emit(c: &Common, text: &str) -> Result<(), CliError> {
    match &c.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn params(c: &Common) -> Result<EquivariantParams, CliError> {
    Ok(EquivariantParams::new(parse(&c.epsilon)?, parse(&c.h)?)?)
}

fn base_bundle(c: &Common, eps: &EquivariantParams, states: &[GTPattern]) -> Bundle {
    Bundle {
        n: c.n,
        p: c.p,
        lambda: c.lambda,
        epsilon: to_text(&eps.epsilon),
        h: to_text(&eps.h),
        states: states
            .iter()
            .enumerate()
            .map(|(i, s)| StateRecord::new(i, s))
            .collect(),
        method: None,
        amplitudes: None,
        psi: None,
        modes: None,
        verification: None,
    }
}

/// State ids selected by `--pattern`, or all of them.
fn selected(
    c: &Common,
    pattern: &Option<String>,
    states: &[GTPattern],
) -> Result<Vec<usize>, CliError> {
    match pattern {
        None => Ok((0..states.len()).collect()),
        Some(text) => {
            let pat = parse_pattern(c.n, c.p, c.lambda, text)?;
            let id = states
                .iter()
                .position(|s| *s == pat)
                .expect("every valid pattern is enumerated");
            Ok(vec![id])
        }
    }
}

fn render_bundle(c: &Common, b: &Bundle) -> Result<String, CliError> {
    match c.format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(b).map_err(|e| CliError::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(v) = &b.verification {
                for r in &v.reports {
                    w.serialize(r)
                        .map_err(|e| CliError::Output(e.to_string()))?;
                }
            } else {
                for r in b.csv_rows() {
                    w.serialize(r)
                        .map_err(|e| CliError::Output(e.to_string()))?;
                }
            }
            let bytes = w
                .into_inner()
                .map_err(|e| CliError::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

pub fn execute(cmd: &Command) -> Result<Rendered, CliError> {
    let c = common(cmd);
    let eps = params(c)?;
    let ok = |text| Ok(Rendered { text, passed: true });
    match cmd {
        Command::Dims(_) => {
            let d = rectangular_dimension(c.n, c.p, c.lambda)?;
            ok(format!("{d}\n"))
        }
        Command::States(_) => {
            let states = enumerate_patterns(c.n, c.p, c.lambda)?;
            ok(render_bundle(c, &base_bundle(c, &eps, &states))?)
        }
        Command::Psi(sel) => {
            eps.require_h_zero("psi")?;
            let states = enumerate_patterns(c.n, c.p, c.lambda)?;
            let mut b = base_bundle(c, &eps, &states);
            let mut recs = Vec::new();
            for id in selected(c, &sel.pattern, &states)? {
                for k in 1..c.n {
                    let psi = psi_closed_form(&states[id], k, &eps)?;
                    recs.push(PsiRecord::new(id, k, &psi.value));
                }
            }
            b.psi = Some(recs);
            ok(render_bundle(c, &b)?)
        }
        Command::Amplitudes(a) => {
            eps.require_h_zero("amplitudes")?;
            let states = enumerate_patterns(c.n, c.p, c.lambda)?;
            let index: BTreeMap<Vec<i64>, usize> = states
                .iter()
                .enumerate()
                .map(|(i, s)| (s.free_entries(), i))
                .collect();
            let ids = selected(c, &a.selection.pattern, &states)?;
            let recs = match a.method {
                Method::Closed => closed_amplitudes(&states, &ids, &index, &eps)?,
                Method::Localization => localized_amplitudes(&states, &ids, &index, &eps)?,
            };
            let mut b = base_bundle(c, &eps, &states);
            b.method = Some(
                match a.method {
                    Method::Closed => "closed",
                    Method::Localization => "localization",
                }
                .into(),
            );
            b.amplitudes = Some(recs);
            ok(render_bundle(c, &b)?)
        }
        Command::Modes(m) => {
            let alg = ModeAlgebra::build(c.n, c.p, c.lambda, &eps, m.mode_cutoff)?;
            let mut b = base_bundle(c, &eps, &alg.states);
            b.modes = Some(ModesRecord {
                cutoff: m.mode_cutoff,
                operators: alg.operators().iter().map(OperatorRecord::new).collect(),
            });
            ok(render_bundle(c, &b)?)
        }
        Command::Verify(v) => {
            let states = enumerate_patterns(c.n, c.p, c.lambda)?;
            let mut b = base_bundle(c, &eps, &states);
            let record = run_suites(c, &eps, v.suite, v.mode_cutoff)?;
            let passed = record.passed;
            b.verification = Some(record);
            Ok(Rendered {
                text: render_bundle(c, &b)?,
                passed,
            })
        }
    }
}

fn closed_amplitudes(
    states: &[GTPattern],
    ids: &[usize],
    index: &BTreeMap<Vec<i64>, usize>,
    eps: &EquivariantParams,
) -> Result<Vec<AmplitudeRecord>, CliError> {
    let mut recs = Vec::new();
    for &id in ids {
        let s = &states[id];
        for k in 1..s.n() {
            let (lo, hi) = s.bounds(k);
            for j in lo..=hi {
                let e = amplitude_e(s, k, j, eps)?;
                if let Some(t) = &e.target {
                    let pole = add_pole(s, k, j, eps);
                    let tid = index[&t.free_entries()];
                    recs.push(AmplitudeRecord::new(
                        id,
                        k,
                        j,
                        AmplitudeKind::Raise,
                        tid,
                        &pole,
                        &e.value,
                    ));
                }
                let f = amplitude_f(s, k, j, eps)?;
                if let Some(t) = &f.target {
                    let pole = remove_pole(s, k, j, eps);
                    let tid = index[&t.free_entries()];
                    recs.push(AmplitudeRecord::new(
                        id,
                        k,
                        j,
                        AmplitudeKind::Lower,
                        tid,
                        &pole,
                        &f.value,
                    ));
                }
            }
        }
    }
    Ok(recs)
}

fn localized_amplitudes(
    states: &[GTPattern],
    ids: &[usize],
    index: &BTreeMap<Vec<i64>, usize>,
    eps: &EquivariantParams,
) -> Result<Vec<AmplitudeRecord>, CliError> {
    let config = LocalizationConfig::default();
    let mut recs = Vec::new();
    for &id in ids {
        let s = &states[id];
        let fp = localization_fixed_point(s, &config)?;
        for k in 1..s.n() {
            let (lo, hi) = s.bounds(k);
            for j in lo..=hi {
                if let Some(t) = s.raised(k, j) {
                    let fp_t = localization_fixed_point(&t, &config)?;
                    let (e, _) = amplitudes_via_localization(&fp, &fp_t, eps, &config)?;
                    let pole = add_pole(s, k, j, eps);
                    let tid = index[&t.free_entries()];
                    recs.push(AmplitudeRecord::new(
                        id,
                        k,
                        j,
                        AmplitudeKind::Raise,
                        tid,
                        &pole,
                        &e,
                    ));
                }
                if let Some(t) = s.lowered(k, j) {
                    let fp_t = localization_fixed_point(&t, &config)?;
                    let (_, f) = amplitudes_via_localization(&fp_t, &fp, eps, &config)?;
                    let pole = remove_pole(s, k, j, eps);
                    let tid = index[&t.free_entries()];
                    recs.push(AmplitudeRecord::new(
                        id,
                        k,
                        j,
                        AmplitudeKind::Lower,
                        tid,
                        &pole,
                        &f,
                    ));
                }
            }
        }
    }
    Ok(recs)
}

fn run_suites(
    c: &Common,
    eps: &EquivariantParams,
    suite: Suite,
    cutoff: usize,
) -> Result<VerificationRecord, CliError> {
    let (n, p, lambda) = (c.n, c.p, c.lambda);
    let suites = suite.expand();
    let mut reports: Vec<ReportRecord> = Vec::new();
    let mut psi_sign = None;
    let mut algebra: Option<ModeAlgebra> = None;
    let mut push = |name: &str, rs: Vec<RelationReport>| {
        reports.extend(rs.iter().map(|r| ReportRecord::new(name, r)));
    };
    for s in &suites {
        let name = s.name();
        match s {
            Suite::Constraints => push(name, verify::verify_constraints(n, p, lambda, eps)?),
            Suite::Psi => push(name, verify::verify_psi(n, p, lambda, eps)?),
            Suite::Hysteresis => push(name, verify::verify_hysteresis(n, p, lambda, eps)?),
            Suite::Gelfand => push(name, verify::verify_gelfand(n, p, lambda, eps)?),
            Suite::Reductions => push(name, verify::verify_reductions(n, p, lambda, eps)?),
            Suite::Localization => push(
                name,
                verify::verify_localization(n, p, lambda, eps, &LocalizationConfig::default())?,
            ),
            Suite::Modes | Suite::Serre => {
                if algebra.is_none() {
                    algebra = Some(ModeAlgebra::build(n, p, lambda, eps, cutoff)?);
                }
                let alg = algebra.as_ref().expect("built above");
                if *s == Suite::Modes {
                    let out = verify::verify_mode_relations(alg);
                    psi_sign = Some(out.psi_sign);
                    push(name, out.reports);
                } else {
                    push(name, verify::verify_serre(alg));
                }
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let failures = reports.iter().filter(|r| !r.pass).count();
    Ok(VerificationRecord {
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
        psi_sign,
        passed: failures == 0,
        failures,
        reports,
    })
}
