use yangian::amplitudes::{amplitude_e, amplitude_f, psi_closed_form};
use yangian::gt::{add_pole, remove_pole};
use yangian::matrix::RationalMatrix;
use yangian::modes::{build_mode_operators, GeneratorKind, ModeAlgebra};
use yangian::quiver::EquivariantParams;
use yangian::rational::{frac, int, pow, BigRat};
use yangian::verify::{all_pass, verify_mode_relations, verify_serre};
use yangian::Error;

fn with_eps(eps: BigRat) -> EquivariantParams {
    EquivariantParams::with_epsilon(eps).unwrap()
}

fn unit() -> EquivariantParams {
    with_eps(int(1))
}

fn is_zero(m: &RationalMatrix) -> bool {
    m.nonzero_count() == 0
}

#[test]
fn sl3_fundamental_examples() {
    let alg = ModeAlgebra::build(3, 1, 1, &unit(), 1).unwrap();
    assert_eq!(alg.dim(), 3);
    let e0 = alg.e(1, 0);
    assert_eq!(*e0.get(1, 0), int(-1));
    assert_eq!(e0.nonzero_count(), 1);
    // The only node-1 raising move from the vacuum has its pole at 0.
    assert!(is_zero(alg.e(1, 1)));

    let psi0 = alg.psi(1, 0);
    let diag: Vec<BigRat> = (0..3).map(|i| psi0.get(i, i).clone()).collect();
    assert_eq!(diag, vec![int(1), int(-1), int(0)]);
    assert_eq!(psi0.nonzero_count(), 2);

    let c = RationalMatrix::commutator(alg.e(1, 0), alg.f(1, 0));
    assert_eq!(c, psi0.scale(&int(-1)));
}

#[test]
fn operator_inventory() {
    for (n, p, lambda) in [(3, 1, 2), (4, 2, 1), (5, 3, 1)] {
        let ops = build_mode_operators(n, p, lambda, &unit(), 0).unwrap();
        assert_eq!(ops.len(), 3 * (n - 1));
        let ops = build_mode_operators(n, p, lambda, &unit(), 2).unwrap();
        assert_eq!(ops.len(), 9 * (n - 1));
        assert!(ops
            .iter()
            .any(|o| o.kind == GeneratorKind::Psi && o.mode == 2));
    }
    let alg = ModeAlgebra::build(3, 1, 2, &unit(), 2).unwrap();
    assert_eq!(alg.psi_cutoff(), 5);
    let h = EquivariantParams::new(int(1), frac(1, 4)).unwrap();
    assert!(matches!(
        ModeAlgebra::build(3, 1, 2, &h, 1),
        Err(Error::InvalidParams(_))
    ));
}

#[test]
fn matrix_entries_are_amplitudes_times_pole_powers() {
    let prm = with_eps(frac(3, 2));
    let alg = ModeAlgebra::build(4, 2, 1, &prm, 2).unwrap();
    let index = |s: &yangian::gt::GTPattern| alg.states.iter().position(|t| t == s).unwrap();
    for (col, s) in alg.states.iter().enumerate() {
        for k in 1..4 {
            let (a, b) = s.bounds(k);
            for m in 0..=2 {
                let mut want_e = vec![int(0); alg.dim()];
                let mut want_f = vec![int(0); alg.dim()];
                for j in a..=b {
                    if let Some(t) = s.raised(k, j) {
                        let v = amplitude_e(s, k, j, &prm).unwrap().value;
                        want_e[index(&t)] += v * pow(&add_pole(s, k, j, &prm), m as i64);
                    }
                    if let Some(t) = s.lowered(k, j) {
                        let v = amplitude_f(s, k, j, &prm).unwrap().value;
                        want_f[index(&t)] += v * pow(&remove_pole(s, k, j, &prm), m as i64);
                    }
                }
                for row in 0..alg.dim() {
                    assert_eq!(*alg.e(k, m).get(row, col), want_e[row]);
                    assert_eq!(*alg.f(k, m).get(row, col), want_f[row]);
                }
            }
        }
    }
}

#[test]
fn psi_modes_are_series_coefficients() {
    let prm = with_eps(frac(-4, 3));
    let alg = ModeAlgebra::build(4, 1, 2, &prm, 2).unwrap();
    let top = alg.psi_cutoff();
    for (i, s) in alg.states.iter().enumerate() {
        for k in 1..4 {
            let series = psi_closed_form(s, k, &prm)
                .unwrap()
                .value
                .series_at_infinity(top)
                .unwrap();
            for m in 0..=top {
                let psi = alg.psi(k, m);
                assert_eq!(*psi.get(i, i), series.coefficients[m]);
                assert!((0..alg.dim()).all(|r| r == i || *psi.get(r, i) == int(0)));
            }
        }
    }
}

#[test]
fn relations_hold_with_a_uniform_sign() {
    for eps in [int(1), frac(2, 5)] {
        let prm = with_eps(eps);
        for (n, p, lambda, cutoff) in [(3, 1, 2, 2), (4, 1, 1, 2), (4, 2, 1, 2)] {
            let alg = ModeAlgebra::build(n, p, lambda, &prm, cutoff).unwrap();
            let rel = verify_mode_relations(&alg);
            assert_eq!(rel.psi_sign, -1);
            let failing: Vec<_> = rel.reports.iter().filter(|r| !r.pass).collect();
            assert!(failing.is_empty(), "({n},{p},{lambda}): {failing:?}");
        }
    }
}

#[test]
fn serre_relations() {
    for (n, p, lambda) in [(3, 1, 2), (4, 1, 2), (4, 2, 1), (5, 2, 1)] {
        let alg = ModeAlgebra::build(n, p, lambda, &unit(), 1).unwrap();
        let reports = verify_serre(&alg);
        assert_eq!(reports.len(), 2 * (n - 1) * (n - 2));
        assert!(all_pass(&reports), "({n},{p},{lambda})");
    }
}

#[test]
fn distinct_nodes_commute_where_expected() {
    let alg = ModeAlgebra::build(4, 2, 1, &unit(), 1).unwrap();
    for m in 0..=1 {
        for k in 0..=1 {
            assert!(is_zero(&RationalMatrix::commutator(
                alg.e(1, m),
                alg.f(2, k)
            )));
            assert!(is_zero(&RationalMatrix::commutator(
                alg.e(1, m),
                alg.e(3, k)
            )));
            assert!(is_zero(&RationalMatrix::commutator(
                alg.f(1, m),
                alg.f(3, k)
            )));
        }
    }
}

#[test]
fn zero_modes_act_as_a_lie_algebra() {
    let alg = ModeAlgebra::build(3, 1, 2, &unit(), 0).unwrap();
    for a in 1..3 {
        let h = alg.psi(a, 0).scale(&int(-1));
        for b in 1..3 {
            let cab = if a == b { 2 } else { -1 };
            let lhs = RationalMatrix::commutator(&h, alg.e(b, 0));
            assert_eq!(lhs, alg.e(b, 0).scale(&int(cab)));
        }
    }
}
