use proptest::prelude::*;

use yangian::matrix::RationalMatrix;
use yangian::ratfunc::FactoredRatFunc;
use yangian::rational::{frac, int, parse, to_text, BigRat};
use yangian::Error;

fn rf(scalar: i64, num: &[i64], den: &[i64]) -> FactoredRatFunc {
    FactoredRatFunc::new(
        int(scalar),
        num.iter().map(|&v| int(v)).collect(),
        den.iter().map(|&v| int(v)).collect(),
    )
}

// Dense polynomial helpers, coefficients in ascending degree. These are the
// independent oracles for the factored representation.

fn poly_from_roots(roots: &[BigRat]) -> Vec<BigRat> {
    let mut p = vec![int(1)];
    for r in roots {
        let mut next = vec![int(0); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        p = next;
    }
    p
}

fn horner(p: &[BigRat], z: &BigRat) -> BigRat {
    p.iter().rev().fold(int(0), |acc, c| acc * z + c)
}

/// Quotient of `p` by `(z - z0)`, assuming exact divisibility.
fn divide_linear(p: &[BigRat], z0: &BigRat) -> Vec<BigRat> {
    let d = p.len() - 1;
    let mut q = vec![int(0); d];
    let mut carry = int(0);
    for i in (0..d).rev() {
        carry = &p[i + 1] + &carry * z0;
        q[i] = carry.clone();
    }
    q
}

fn residue_oracle(f: &FactoredRatFunc, z0: &BigRat) -> BigRat {
    let num = poly_from_roots(f.num_roots());
    let den = poly_from_roots(f.den_roots());
    let reduced = divide_linear(&den, z0);
    f.scalar() * horner(&num, z0) / horner(&reduced, z0)
}

/// Constant term and the first `order + 1` coefficients of `z^(-j-1)` by
/// polynomial long division carried to negative powers.
fn long_division(f: &FactoredRatFunc, order: usize) -> (BigRat, Vec<BigRat>) {
    let num: Vec<BigRat> = poly_from_roots(f.num_roots())
        .into_iter()
        .map(|c| c * f.scalar())
        .collect();
    let den = poly_from_roots(f.den_roots());
    let d = den.len() - 1;
    let lead = den[d].clone();
    let mut rem = num.clone();
    rem.resize(d + 1, int(0));
    let q = if num.len() == d + 1 {
        num[d].clone() / &lead
    } else {
        int(0)
    };
    for i in 0..=d {
        rem[i] = &rem[i] - &q * &den[i];
    }
    let mut coeffs = Vec::new();
    for _ in 0..=order {
        // rem has degree < d; multiply by z and peel off the z^d term.
        rem.insert(0, int(0));
        rem.truncate(d + 1);
        let c = rem[d].clone() / &lead;
        for i in 0..=d {
            rem[i] = &rem[i] - &c * &den[i];
        }
        coeffs.push(c);
    }
    (q, coeffs)
}

fn naive_rank(rows: &[Vec<BigRat>], cols: usize) -> usize {
    let mut m: Vec<Vec<BigRat>> = rows.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != int(0)) else {
            continue;
        };
        m.swap(rank, pivot);
        let pv = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && m[r][c] != int(0) {
                let factor = &m[r][c] / &pv;
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| frac(n, d))
}

fn ratfunc() -> impl Strategy<Value = FactoredRatFunc> {
    (
        (-4i64..=4).prop_filter("nonzero", |v| *v != 0),
        prop::collection::vec(small_rat(), 0..4),
        prop::collection::vec(small_rat(), 0..4),
    )
        .prop_map(|(s, num, den)| FactoredRatFunc::new(int(s), num, den))
}

fn bounded_ratfunc() -> impl Strategy<Value = FactoredRatFunc> {
    ratfunc().prop_filter("bounded at infinity", |f| f.degree() <= 0)
}

fn matrix() -> impl Strategy<Value = Vec<Vec<BigRat>>> {
    (0usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![3 => Just(int(0)), 2 => small_rat()], c..=c),
            r..=r,
        )
    })
}

#[test]
fn multiplication_examples() {
    let telescoped = &rf(1, &[1], &[2]) * &rf(1, &[2], &[3]);
    assert_eq!(telescoped, rf(1, &[1], &[3]));

    let phi = rf(1, &[-1], &[1]);
    assert_eq!(&phi * &phi, rf(1, &[-1, -1], &[1, 1]));

    let zero = &phi * &FactoredRatFunc::zero();
    assert!(zero.is_zero());
    assert!(zero.num_roots().is_empty() && zero.den_roots().is_empty());
}

#[test]
fn evaluation_examples() {
    let phi = rf(1, &[-1], &[1]);
    assert_eq!(phi.eval(&int(3)).unwrap(), int(2));
    assert_eq!(rf(-1, &[2, -1], &[1, 0]).eval(&int(2)).unwrap(), int(0));
    assert!(matches!(phi.eval(&int(1)), Err(Error::EvalAtPole(_))));
}

#[test]
fn residue_examples() {
    assert_eq!(
        rf(-1, &[2, -1], &[1, 0]).residue_simple(&int(1)).unwrap(),
        int(2)
    );
    assert_eq!(rf(-1, &[1], &[0]).residue_simple(&int(0)).unwrap(), int(1));
    assert!(matches!(
        rf(1, &[-1], &[1, 1]).residue_simple(&int(1)),
        Err(Error::NotASimplePole { .. })
    ));
    assert!(matches!(
        rf(1, &[-1], &[1]).residue_simple(&int(5)),
        Err(Error::NotAPole(_))
    ));
}

#[test]
fn series_examples() {
    let s = rf(1, &[-1], &[1]).series_at_infinity(2).unwrap();
    assert_eq!(s.constant_term, int(1));
    assert_eq!(s.coefficients, vec![int(2), int(2), int(2)]);

    let s = rf(-1, &[1], &[0]).series_at_infinity(1).unwrap();
    assert_eq!(s.constant_term, int(-1));
    assert_eq!(s.coefficients, vec![int(1), int(0)]);

    let s = FactoredRatFunc::constant(int(5))
        .series_at_infinity(3)
        .unwrap();
    assert_eq!(s.constant_term, int(5));
    assert!(s.coefficients.iter().all(|c| *c == int(0)));
    assert_eq!(s.coefficients.len(), 4);

    assert!(matches!(
        rf(1, &[1, 2], &[0]).series_at_infinity(1),
        Err(Error::UnboundedAtInfinity)
    ));
}

#[test]
fn kernel_examples() {
    let m = RationalMatrix::from_rows(vec![vec![int(1), int(1)], vec![int(2), int(2)]]);
    let k = m.kernel_basis();
    assert_eq!(k.len(), 1);
    assert_eq!(&k[0][0] + &k[0][1], int(0));
    assert_ne!(k[0][0], int(0));

    assert!(RationalMatrix::identity(3).kernel_basis().is_empty());

    let empty = RationalMatrix::zeros(0, 3);
    let k = empty.kernel_basis();
    assert_eq!(k.len(), 3);
    for (i, v) in k.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            assert_eq!(*x, if i == j { int(1) } else { int(0) });
        }
    }
}

#[test]
fn rational_text_form() {
    assert_eq!(to_text(&int(0)), "0/1");
    assert_eq!(to_text(&frac(4, -6)), "-2/3");
    assert_eq!(parse("3").unwrap(), int(3));
    assert_eq!(parse("-6/4").unwrap(), frac(-3, 2));
    assert!(matches!(parse("1/0"), Err(Error::Parse(_))));
    assert!(matches!(parse("x"), Err(Error::Parse(_))));
}

proptest! {
    #[test]
    fn residues_match_dense_limit(f in ratfunc()) {
        for pole in f.poles() {
            if f.pole_order(&pole) == 1 {
                prop_assert_eq!(f.residue_simple(&pole).unwrap(), residue_oracle(&f, &pole));
            }
        }
    }

    #[test]
    fn series_matches_long_division(f in bounded_ratfunc(), order in 0usize..=8) {
        let s = f.series_at_infinity(order).unwrap();
        let (constant, coeffs) = long_division(&f, order);
        prop_assert_eq!(s.constant_term, constant);
        prop_assert_eq!(s.coefficients, coeffs);
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in ratfunc(), b in ratfunc(), c in ratfunc()
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn evaluation_matches_dense_form(f in ratfunc(), z in small_rat()) {
        let den = poly_from_roots(f.den_roots());
        let dv = horner(&den, &z);
        if dv == int(0) {
            prop_assert!(f.eval(&z).is_err());
        } else {
            let want = f.scalar() * horner(&poly_from_roots(f.num_roots()), &z) / dv;
            prop_assert_eq!(f.eval(&z).unwrap(), want);
        }
    }

    #[test]
    fn argument_transforms_agree_with_evaluation(
        f in ratfunc(), z in small_rat(), c in small_rat(), sigma in small_rat()
    ) {
        if let Ok(v) = f.eval(&(&z - &c)) {
            prop_assert_eq!(f.shift(&c).eval(&z).unwrap(), v);
        }
        if let Ok(v) = f.eval(&-z.clone()) {
            prop_assert_eq!(f.reflect().eval(&z).unwrap(), v);
        }
        if sigma != int(0) {
            if let Ok(v) = f.eval(&(&z / &sigma)) {
                prop_assert_eq!(f.rescale_argument(&sigma).eval(&z).unwrap(), v);
            }
        }
    }

    #[test]
    fn reciprocal_inverts(f in ratfunc()) {
        prop_assert_eq!(&f * &f.recip(), FactoredRatFunc::one());
    }

    #[test]
    fn rank_matches_naive_elimination(rows in matrix()) {
        let cols = rows.first().map_or(0, Vec::len);
        let m = RationalMatrix::from_rows(rows.clone());
        if rows.is_empty() {
            prop_assert_eq!(m.rank(), 0);
        } else {
            prop_assert_eq!(m.rank(), naive_rank(&rows, cols));
        }
    }

    #[test]
    fn kernel_is_annihilated_and_complete(rows in matrix()) {
        prop_assume!(!rows.is_empty());
        let cols = rows[0].len();
        let m = RationalMatrix::from_rows(rows);
        let kernel = m.kernel_basis();
        for v in &kernel {
            prop_assert!(m.apply(v).iter().all(|x| *x == int(0)));
        }
        prop_assert_eq!(m.rank() + kernel.len(), cols);
        prop_assert_eq!(naive_rank(&kernel, cols), kernel.len());
    }

    #[test]
    fn rational_text_round_trips(n in -1000i64..1000, d in 1i64..1000) {
        let r = frac(n, d);
        prop_assert_eq!(parse(&to_text(&r)).unwrap(), r);
    }
}
