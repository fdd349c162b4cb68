//! Exact verification suites. Every check produces a [`RelationReport`]
//! holding the largest absolute residual; a check passes when that residual
//! is exactly zero.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::amplitudes::{
    amplitude_e, amplitude_f, amplitude_f_with, gelfand_formula_squared, gelfand_squared,
    psi_closed_form, psi_generic, raising_moves, AmplitudeKind, LoweringForm,
};
use crate::error::Result;
use crate::gt::{
    add_pole, add_remove_sets, enumerate_patterns, fixed_point_for, format_pattern,
    rectangular_dimension, verify_f_terms, GTPattern,
};
use crate::localization::{
    amplitudes_via_localization, euler_class, incidence_euler, localization_fixed_point,
    LocalizationConfig,
};
use crate::matrix::RationalMatrix;
use crate::modes::ModeAlgebra;
use crate::quiver::{
    bond_factor, build_quiver, cartan_matrix, check_constraints, chirality, EquivariantParams,
};
use crate::ratfunc::FactoredRatFunc;
use crate::rational::{abs, frac, int, BigRat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub relation: String,
    pub detail: String,
    pub max_residual: BigRat,
    pub pass: bool,
}

impl RelationReport {
    pub fn new(relation: impl Into<String>, detail: impl Into<String>, residual: BigRat) -> Self {
        RelationReport {
            relation: relation.into(),
            detail: detail.into(),
            pass: residual.is_zero(),
            max_residual: residual,
        }
    }

    /// A check expressed as `lhs == rhs`.
    pub fn compare(
        relation: impl Into<String>,
        detail: impl Into<String>,
        lhs: &BigRat,
        rhs: &BigRat,
    ) -> Self {
        Self::new(relation, detail, abs(&(lhs - rhs)))
    }

    /// A boolean check; failures are recorded with residual 1.
    pub fn holds(relation: impl Into<String>, detail: impl Into<String>, ok: bool) -> Self {
        Self::new(
            relation,
            detail,
            if ok { BigRat::zero() } else { BigRat::one() },
        )
    }
}

pub fn all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

/// Running maximum of residuals for one named relation.
struct Accumulator {
    relation: String,
    detail: String,
    worst: BigRat,
}

impl Accumulator {
    fn new(relation: &str, detail: String) -> Self {
        Accumulator {
            relation: relation.to_string(),
            detail,
            worst: BigRat::zero(),
        }
    }

    fn matrix(&mut self, m: &RationalMatrix) {
        let v = m.max_abs();
        if v > self.worst {
            self.worst = v;
        }
    }

    fn scalar(&mut self, lhs: &BigRat, rhs: &BigRat) {
        let v = abs(&(lhs - rhs));
        if v > self.worst {
            self.worst = v;
        }
    }

    fn fail(&mut self) {
        if self.worst < BigRat::one() {
            self.worst = BigRat::one();
        }
    }

    fn finish(self) -> RelationReport {
        RelationReport::new(self.relation, self.detail, self.worst)
    }
}

/// Outcome of the mode relation checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeRelations {
    /// Global sign `s` with `psi_phys = s * psi`, fixed by
    /// `[e_0, f_0] = s psi_0` on every node.
    pub psi_sign: i64,
    pub reports: Vec<RelationReport>,
}

fn psi_sign(alg: &ModeAlgebra) -> i64 {
    for s in [-1i64, 1] {
        let ok = (1..alg.n).all(|a| {
            let c = RationalMatrix::commutator(alg.e(a, 0), alg.f(a, 0));
            c == alg.psi(a, 0).scale(&int(s))
        });
        if ok {
            return s;
        }
    }
    -1
}

/// Checks, for all node pairs `(a, b)` and all modes in range:
///
/// ```text
/// [e_{m+1}, e_k] - [e_m, e_{k+1}] =  (eps A_ab / 2) {e_m, e_k}
/// [f_{m+1}, f_k] - [f_m, f_{k+1}] = -(eps A_ab / 2) {f_m, f_k}
/// [psi_{m+1}, e_k] - [psi_m, e_{k+1}] =  (eps A_ab / 2) {psi_m, e_k}
/// [psi_{m+1}, f_k] - [psi_m, f_{k+1}] = -(eps A_ab / 2) {psi_m, f_k}
/// [e_m, f_k] = delta_ab psi_phys_{m+k}
/// [psi_m, psi_k] = 0
/// [psi_phys_0, e_k] = A_ab e_k,   [psi_phys_0, f_k] = -A_ab f_k
/// ```
pub fn verify_mode_relations(alg: &ModeAlgebra) -> ModeRelations {
    let s = psi_sign(alg);
    let sign = int(s);
    let cartan = cartan_matrix(alg.n);
    let cut = alg.cutoff;
    let eps = &alg.params.epsilon;
    let mut reports = Vec::new();
    for a in 1..alg.n {
        for b in 1..alg.n {
            let aab = int(cartan[a - 1][b - 1]);
            let half = &aab * eps * frac(1, 2);
            let detail = format!("a={a} b={b} modes<={cut}");
            let mut ee = Accumulator::new("ee", detail.clone());
            let mut ff = Accumulator::new("ff", detail.clone());
            let mut pe = Accumulator::new("psi-e", detail.clone());
            let mut pf = Accumulator::new("psi-f", detail.clone());
            let mut ef = Accumulator::new("e-f", detail.clone());
            let mut pp = Accumulator::new("psi-psi", detail.clone());
            let mut b_e = Accumulator::new("psi0-e", detail.clone());
            let mut b_f = Accumulator::new("psi0-f", detail.clone());
            let com = RationalMatrix::commutator;
            let acom = RationalMatrix::anticommutator;
            for m in 0..cut {
                for k in 0..cut {
                    let lhs =
                        &com(alg.e(a, m + 1), alg.e(b, k)) - &com(alg.e(a, m), alg.e(b, k + 1));
                    ee.matrix(&(&lhs - &acom(alg.e(a, m), alg.e(b, k)).scale(&half)));
                    let lhs =
                        &com(alg.f(a, m + 1), alg.f(b, k)) - &com(alg.f(a, m), alg.f(b, k + 1));
                    ff.matrix(&(&lhs + &acom(alg.f(a, m), alg.f(b, k)).scale(&half)));
                    let lhs =
                        &com(alg.psi(a, m + 1), alg.e(b, k)) - &com(alg.psi(a, m), alg.e(b, k + 1));
                    pe.matrix(&(&lhs - &acom(alg.psi(a, m), alg.e(b, k)).scale(&half)));
                    let lhs =
                        &com(alg.psi(a, m + 1), alg.f(b, k)) - &com(alg.psi(a, m), alg.f(b, k + 1));
                    pf.matrix(&(&lhs + &acom(alg.psi(a, m), alg.f(b, k)).scale(&half)));
                }
            }
            for m in 0..=cut {
                for k in 0..=cut {
                    let c = com(alg.e(a, m), alg.f(b, k));
                    if a == b {
                        ef.matrix(&(&c - &alg.psi(a, m + k).scale(&sign)));
                    } else {
                        ef.matrix(&c);
                    }
                    pp.matrix(&com(alg.psi(a, m), alg.psi(b, k)));
                }
                let p0 = alg.psi(a, 0).scale(&sign);
                b_e.matrix(&(&com(&p0, alg.e(b, m)) - &alg.e(b, m).scale(&aab)));
                b_f.matrix(&(&com(&p0, alg.f(b, m)) + &alg.f(b, m).scale(&aab)));
            }
            for acc in [ee, ff, pe, pf, ef, pp, b_e, b_f] {
                reports.push(acc.finish());
            }
        }
    }
    ModeRelations {
        psi_sign: s,
        reports,
    }
}

/// Serre relations for `e` and `f` with all modes in `{0, 1}` (or `{0}`
/// when the cutoff is 0): for neighbouring nodes
/// `Sym_{m1,m2} [g_a,m1, [g_a,m2, g_b,k]] = 0`, and for distant nodes
/// `[g_a,m, g_b,k] = 0`.
pub fn verify_serre(alg: &ModeAlgebra) -> Vec<RelationReport> {
    let top = alg.cutoff.min(1);
    let com = RationalMatrix::commutator;
    let mut reports = Vec::new();
    for (label, kind) in [("serre-e", 0), ("serre-f", 1)] {
        let g = |node: usize, mode: usize| {
            if kind == 0 {
                alg.e(node, mode)
            } else {
                alg.f(node, mode)
            }
        };
        for a in 1..alg.n {
            for b in 1..alg.n {
                if a == b {
                    continue;
                }
                let mut acc = Accumulator::new(label, format!("a={a} b={b} modes<={top}"));
                for k in 0..=top {
                    for m1 in 0..=top {
                        for m2 in 0..=top {
                            let r = if a.abs_diff(b) == 1 {
                                &com(g(a, m1), &com(g(a, m2), g(b, k)))
                                    + &com(g(a, m2), &com(g(a, m1), g(b, k)))
                            } else {
                                com(g(a, m1), g(b, k))
                            };
                            acc.matrix(&r);
                        }
                    }
                }
                reports.push(acc.finish());
            }
        }
    }
    reports
}

fn phi_at(
    quiver: &crate::quiver::QuiverSpec,
    a: usize,
    b: usize,
    z: &BigRat,
    params: &EquivariantParams,
) -> Option<BigRat> {
    bond_factor(quiver, a, b, params).eval(z).ok()
}

/// Hysteresis identities for every state and every ordered pair of distinct
/// raising moves `a = (k, j)`, `b = (t, i)`:
///
/// 1. `E[L+a -> L+a+b] F[L+a+b -> L+b] = F[L+a -> L] E[L -> L+b]`
/// 2. `E[L->L+a] E[L+a->L+a+b] / (E[L->L+b] E[L+b->L+a+b]) * phi_kt(x_a - x_b) = 1`
/// 3. `F[L+a+b->L+a] F[L+a->L] / (F[L+a+b->L+b] F[L+b->L]) * phi_kt(x_a - x_b) = 1`
/// 4. `E[L -> L+a] F[L+a -> L] = res_{x_a} Psi^(k)_L`
pub fn verify_hysteresis(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
) -> Result<Vec<RelationReport>> {
    verify_hysteresis_with(n, p, lambda, params, LoweringForm::Corrected)
}

/// [`verify_hysteresis`] with a chosen form of the lowering amplitude.
pub fn verify_hysteresis_with(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
    form: LoweringForm,
) -> Result<Vec<RelationReport>> {
    params.require_h_zero("hysteresis")?;
    let quiver = build_quiver(n, p, lambda)?;
    let e = |s: &GTPattern, k, j| amplitude_e(s, k, j, params).map(|a| a.value);
    let f = |s: &GTPattern, k, j| amplitude_f_with(s, k, j, params, form).map(|a| a.value);
    let mut reports = Vec::new();
    for state in enumerate_patterns(n, p, lambda)? {
        let detail = format_pattern(&state);
        let mut id1 = Accumulator::new("hysteresis-1", detail.clone());
        let mut id2 = Accumulator::new("hysteresis-2", detail.clone());
        let mut id3 = Accumulator::new("hysteresis-3", detail.clone());
        let mut id4 = Accumulator::new("hysteresis-4", detail.clone());
        let moves = raising_moves(&state);
        for &(k, j) in &moves {
            let pa = state.raised(k, j).expect("raising move");
            let xa = add_pole(&state, k, j, params);
            let psi = psi_closed_form(&state, k, params)?.value;
            let lhs = e(&state, k, j)? * f(&pa, k, j)?;
            match psi.residue_simple(&xa) {
                Ok(res) => id4.scalar(&lhs, &res),
                Err(_) => id4.fail(),
            }
            for &(t, i) in &moves {
                if (t, i) == (k, j) {
                    continue;
                }
                let pb = state.raised(t, i).expect("raising move");
                let Some(pab) = pa.raised(t, i) else {
                    id1.fail();
                    continue;
                };
                let xb = add_pole(&state, t, i, params);
                id1.scalar(
                    &(e(&pa, t, i)? * f(&pab, k, j)?),
                    &(f(&pa, k, j)? * e(&state, t, i)?),
                );
                let Some(phi) = phi_at(&quiver, k, t, &(&xa - &xb), params) else {
                    id2.fail();
                    id3.fail();
                    continue;
                };
                let den = e(&state, t, i)? * e(&pb, k, j)?;
                if den.is_zero() {
                    id2.fail();
                } else {
                    let r = e(&state, k, j)? * e(&pa, t, i)? / den * &phi;
                    id2.scalar(&r, &BigRat::one());
                }
                let den = f(&pab, k, j)? * f(&pb, t, i)?;
                if den.is_zero() {
                    id3.fail();
                } else {
                    let r = f(&pab, t, i)? * f(&pa, k, j)? / den * &phi;
                    id3.scalar(&r, &BigRat::one());
                }
            }
        }
        reports.extend([id1.finish(), id2.finish(), id3.finish(), id4.finish()]);
    }
    Ok(reports)
}

/// Reductions: the `p <-> n - p` symmetry of the state count and, for
/// `p = 1`, the `sl_2` chain of states whose entries above row 1 vanish.
/// Along that chain `E = -1/eps`, `F = -n (lambda - n + 1) eps` and
/// `-eps Psi^(1)(z) = (z - lambda eps)(z + eps) / ((z - n eps)(z - (n-1) eps))`.
pub fn verify_reductions(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
) -> Result<Vec<RelationReport>> {
    params.require_h_zero("reductions")?;
    let mut reports = Vec::new();
    let dual = n - p;
    let count = int(enumerate_patterns(n, p, lambda)?.len() as i64);
    let dual_count = int(enumerate_patterns(n, dual, lambda)?.len() as i64);
    reports.push(RelationReport::compare(
        "dual-count",
        format!("p={p} vs p={dual}"),
        &count,
        &dual_count,
    ));
    let dim = BigRat::from_integer(rectangular_dimension(n, p, lambda)?);
    reports.push(RelationReport::compare(
        "dimension",
        format!("n={n} p={p}"),
        &count,
        &dim,
    ));
    if p != 1 {
        return Ok(reports);
    }
    let eps = &params.epsilon;
    let lam = lambda as i64;
    for m in 0..=lam {
        let mut free = alloc::vec![0i64; n - 1];
        free[0] = m;
        let state = GTPattern::from_free_entries(n, p, lambda, &free)?;
        let detail = format_pattern(&state);
        if m < lam {
            let got = amplitude_e(&state, 1, 1, params)?.value;
            reports.push(RelationReport::compare(
                "sl2-e",
                detail.clone(),
                &got,
                &-eps.recip(),
            ));
        }
        if m > 0 {
            let got = amplitude_f(&state, 1, 1, params)?.value;
            let want = -int(m * (lam - m + 1)) * eps;
            reports.push(RelationReport::compare(
                "sl2-f",
                detail.clone(),
                &got,
                &want,
            ));
        }
        let psi = psi_closed_form(&state, 1, params)?.value;
        let scaled = &psi * &FactoredRatFunc::constant(-eps.clone());
        let want = FactoredRatFunc::new(
            BigRat::one(),
            alloc::vec![int(lam) * eps, -eps.clone()],
            alloc::vec![int(m) * eps, int(m - 1) * eps],
        );
        reports.push(RelationReport::holds("sl2-psi", detail, scaled == want));
    }
    Ok(reports)
}

/// The products `E F` on every move agree with the classical Gelfand-Tsetlin
/// squares and are positive.
pub fn verify_gelfand(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
) -> Result<Vec<RelationReport>> {
    let mut reports = Vec::new();
    for state in enumerate_patterns(n, p, lambda)? {
        let mut acc = Accumulator::new("gelfand", format_pattern(&state));
        let mut pos = Accumulator::new("gelfand-positive", format_pattern(&state));
        for k in 1..n {
            let (a, b) = state.bounds(k);
            for j in a..=b {
                for dir in [AmplitudeKind::Raise, AmplitudeKind::Lower] {
                    let got = gelfand_squared(&state, k, j, dir, params)?;
                    let want = gelfand_formula_squared(&state, k, j, dir)?;
                    acc.scalar(&got, &want);
                    let valid = match dir {
                        AmplitudeKind::Raise => state.raised(k, j).is_some(),
                        AmplitudeKind::Lower => state.lowered(k, j).is_some(),
                    };
                    if valid && got <= BigRat::zero() {
                        pos.fail();
                    }
                }
            }
        }
        reports.push(acc.finish());
        reports.push(pos.finish());
    }
    Ok(reports)
}

/// Closed-form Euler classes of the `sl_3` fixed points and of the incidence
/// loci of the two raising moves:
///
/// ```text
/// Eul(n1, n2) = eps^(2 n1) lambda!/(lambda - n1)! (n1 - n2)! n2! prod_{k<=n2} ((2k - 3) eps / 2)^2
/// Eul(n1, n2 -> n1 + 1, n2) = -eps Eul(n1, n2)
/// Eul(n1, n2 -> n1, n2 + 1) = (2 n2 - 1) eps / 2 * Eul(n1, n2) / (n1 - n2)
/// ```
pub fn sl3_reference_euler(lambda: i64, n1: i64, n2: i64, eps: &BigRat) -> BigRat {
    let fact = |m: i64| (1..=m).fold(BigRat::one(), |acc, v| acc * int(v));
    let mut v = crate::rational::pow(eps, 2 * n1) * fact(lambda) / fact(lambda - n1)
        * fact(n1 - n2)
        * fact(n2);
    for k in 1..=n2 {
        let w = frac(2 * k - 3, 2) * eps;
        v *= &w * &w;
    }
    v
}

pub fn sl3_reference_incidence(lambda: i64, n1: i64, n2: i64, node: usize, eps: &BigRat) -> BigRat {
    let base = sl3_reference_euler(lambda, n1, n2, eps);
    if node == 1 {
        -eps * base
    } else {
        frac(2 * n2 - 1, 2) * eps * base / int(n1 - n2)
    }
}

/// Localization checks: for `sl_3` the Euler classes against the closed
/// forms, and for every raising move the localization amplitudes against
/// [`amplitude_e`] and [`amplitude_f`].
pub fn verify_localization(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
    config: &LocalizationConfig,
) -> Result<Vec<RelationReport>> {
    params.require_h_zero("localization")?;
    let eps = &params.epsilon;
    let mut reports = Vec::new();
    let states = enumerate_patterns(n, p, lambda)?;
    let fps: Vec<_> = states
        .iter()
        .map(|s| localization_fixed_point(s, config))
        .collect::<Result<_>>()?;
    let reference = n == 3 && p == 1;
    for (state, fp) in states.iter().zip(&fps) {
        let detail = format_pattern(state);
        if reference {
            let (n1, n2) = (state.m(1, 1), state.m(2, 2));
            let got = euler_class(fp, params, config)?.value();
            let want = sl3_reference_euler(lambda as i64, n1, n2, eps);
            reports.push(RelationReport::compare(
                "euler",
                detail.clone(),
                &got,
                &want,
            ));
        }
        for (k, j) in raising_moves(state) {
            let up = state.raised(k, j).expect("raising move");
            let idx = states
                .iter()
                .position(|s| *s == up)
                .expect("state list is closed");
            let move_detail = format!("{detail} +({k},{j})");
            if reference {
                let got = incidence_euler(fp, &fps[idx], params, config)?.value();
                let want =
                    sl3_reference_incidence(lambda as i64, state.m(1, 1), state.m(2, 2), k, eps);
                reports.push(RelationReport::compare(
                    "incidence",
                    move_detail.clone(),
                    &got,
                    &want,
                ));
            }
            let (e_loc, f_loc) = amplitudes_via_localization(fp, &fps[idx], params, config)?;
            let e_cl = amplitude_e(state, k, j, params)?.value;
            let f_cl = amplitude_f(&up, k, j, params)?.value;
            reports.push(RelationReport::compare(
                "localization-e",
                move_detail.clone(),
                &e_loc,
                &e_cl,
            ));
            reports.push(RelationReport::compare(
                "localization-f",
                move_detail,
                &f_loc,
                &f_cl,
            ));
        }
    }
    Ok(reports)
}

/// Both routes to the charge function agree, and its poles are exactly the
/// add and remove poles of the state.
pub fn verify_psi(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
) -> Result<Vec<RelationReport>> {
    params.require_h_zero("psi")?;
    let mut reports = Vec::new();
    for state in enumerate_patterns(n, p, lambda)? {
        let detail = format_pattern(&state);
        let mut routes = true;
        let mut poles = true;
        for k in 1..n {
            let closed = psi_closed_form(&state, k, params)?.value;
            routes &= psi_generic(&state, k, params)?.value == closed;
            let (add, rem) = add_remove_sets(&state, k, params)?;
            let mut expected: Vec<BigRat> =
                add.iter().chain(&rem).map(|m| m.pole.clone()).collect();
            expected.sort();
            let simple = closed.poles().len() == closed.den_roots().len();
            poles &= simple && closed.poles() == expected;
        }
        reports.push(RelationReport::holds("psi-routes", detail.clone(), routes));
        reports.push(RelationReport::holds("psi-poles", detail, poles));
    }
    Ok(reports)
}

/// Quiver constraints, bond reciprocity, chirality and the F-terms at every
/// fixed point. Valid for any `h`.
pub fn verify_constraints(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
) -> Result<Vec<RelationReport>> {
    let quiver = build_quiver(n, p, lambda)?;
    let report = check_constraints(&quiver, params);
    let mut reports = Vec::new();
    reports.push(RelationReport::holds(
        "loop-constraints",
        "all words",
        report.loops_ok(),
    ));
    for v in &report.vertices {
        let want = if n == 2 {
            BigRat::zero()
        } else if v.node == 1 {
            -int(2) * &params.h
        } else if v.node == n - 1 {
            int(2) * &params.h
        } else {
            BigRat::zero()
        };
        reports.push(RelationReport::compare(
            "vertex-residual",
            format!("node {}", v.node),
            &v.value,
            &want,
        ));
    }
    reports.push(RelationReport::holds(
        "vertex-balance",
        "sum over nodes",
        report.vertices_balance(),
    ));
    reports.push(RelationReport::compare(
        "c-weight-rank",
        "loop constraints",
        &int(report.c_weight_rank as i64),
        &int(n as i64 - 1),
    ));
    let mut recip = true;
    let mut chiral = true;
    for a in 1..n {
        for b in 1..n {
            let prod =
                &bond_factor(&quiver, a, b, params) * &bond_factor(&quiver, b, a, params).reflect();
            recip &= prod == FactoredRatFunc::one();
            chiral &= chirality(&quiver, a, b) == 0;
        }
    }
    reports.push(RelationReport::holds(
        "bond-reciprocity",
        "all node pairs",
        recip,
    ));
    reports.push(RelationReport::holds("chirality", "all node pairs", chiral));
    for state in enumerate_patterns(n, p, lambda)? {
        let fp = fixed_point_for(&quiver, &state);
        let f = verify_f_terms(&fp, params);
        let worst = f
            .residuals
            .iter()
            .map(|r| r.max_abs.clone())
            .max()
            .unwrap_or_else(BigRat::zero);
        reports.push(RelationReport::new(
            "f-terms",
            format_pattern(&state),
            worst,
        ));
    }
    Ok(reports)
}
