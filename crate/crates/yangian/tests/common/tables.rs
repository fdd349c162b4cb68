//! Printed coefficient tables for `sl_3` and the two `sl_4` families, written
//! directly in the state labels used there. These are test oracles: they do
//! not call into the closed-form amplitude code.
#![allow(dead_code)]

use yangian::gt::GTPattern;
use yangian::rational::{frac, int, BigRat};

/// Families that have printed tables: `(3, 1)`, `(4, 1)` and `(4, 2)`.
pub const FAMILIES: [(usize, usize); 3] = [(3, 1), (4, 1), (4, 2)];

fn r(v: i64) -> BigRat {
    int(v)
}

fn half() -> BigRat {
    frac(1, 2)
}

/// Printed `E[state -> state + (k, j)]`. `None` when the printed entry has a
/// vanishing denominator or the family has no table.
pub fn printed_e(s: &GTPattern, k: usize, j: usize, eps: &BigRat) -> Option<BigRat> {
    let x = s.free_entries();
    let v = match (s.n(), s.p(), k, j) {
        (3, 1, 1, 1) | (4, 1, 1, 1) => r(-1),
        (3, 1, 2, 2) | (4, 1, 2, 2) => r(x[0] - x[1]) / (r(x[1]) - half()),
        (4, 1, 3, 3) => {
            if x[2] == 1 {
                return None;
            }
            r(x[1] - x[2]) / r(x[2] - 1)
        }
        (4, 2, ..) => {
            let (n1, m1, m2, n3) = (x[0], x[1], x[2], x[3]);
            match (k, j) {
                (1, 1) => r(m1 - n1) / (r(n1) - half()),
                (2, 1) => r(-1),
                (2, 2) => {
                    if m1 == m2 {
                        return None;
                    }
                    -r((n1 - m2) * (n3 - m2)) / r((m1 - m2) * (m1 - m2 + 1))
                }
                (3, 2) => r(m1 - n3) / (r(n3) - half()),
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(v / eps)
}

/// Printed `F[state -> state - (k, j)]`, labelled by the upper state.
pub fn printed_f(s: &GTPattern, k: usize, j: usize, lambda: i64, eps: &BigRat) -> Option<BigRat> {
    let x = s.free_entries();
    let v = match (s.n(), s.p(), k, j) {
        (3, 1, 1, 1) | (4, 1, 1, 1) => -r((x[0] - x[1]) * (lambda - x[0] + 1)),
        (3, 1, 2, 2) => r(x[1]) * (r(x[1]) - frac(3, 2)),
        (4, 1, 2, 2) => r(x[1] - x[2]) * (r(x[1]) - frac(3, 2)),
        (4, 1, 3, 3) => r(x[2] * (x[2] - 2)),
        (4, 2, ..) => {
            let (n1, m1, m2, n3) = (x[0], x[1], x[2], x[3]);
            match (k, j) {
                (1, 1) => r(n1 - m2) * (r(n1) - frac(3, 2)),
                (2, 1) => {
                    if m1 == m2 {
                        return None;
                    }
                    -r((m1 + 1) * (lambda - m1 + 1) * (m1 - n1) * (m1 - n3))
                        / r((m1 - m2 + 1) * (m1 - m2))
                }
                (2, 2) => -r(m2 * (lambda - m2 + 2)),
                (3, 2) => r(n3 - m2) * (r(n3) - frac(3, 2)),
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(v * eps)
}

/// Square of the printed zero-mode coefficient `e_0^(k)` on the `(k, j)`
/// component of `state`.
pub fn printed_e0_squared(s: &GTPattern, k: usize, j: usize, lambda: i64) -> Option<BigRat> {
    let x = s.free_entries();
    let v = match (s.n(), s.p()) {
        (3, 1) => {
            let (n1, n2) = (x[0], x[1]);
            match k {
                1 => r((lambda - n1) * (n1 - n2 + 1)),
                _ => r((n1 - n2) * (n2 + 1)),
            }
        }
        (4, 1) => {
            let (n1, n2, n3) = (x[0], x[1], x[2]);
            match k {
                1 => r((lambda - n1) * (n1 - n2 + 1)),
                2 => r((n1 - n2) * (n2 - n3 + 1)),
                _ => r((n2 - n3) * (n3 + 1)),
            }
        }
        (4, 2) => {
            let (n1, m1, m2, n3) = (x[0], x[1], x[2], x[3]);
            match (k, j) {
                (1, _) => r((m1 - n1) * (n1 - m2 + 1)),
                (2, 1) => {
                    r((m1 + 2) * (lambda - m1) * (m1 - n1 + 1) * (m1 - n3 + 1))
                        / r((m1 - m2 + 2) * (m1 - m2 + 1))
                }
                (2, _) => {
                    if m1 == m2 {
                        return None;
                    }
                    r((m2 + 1) * (lambda - m2 + 1) * (n1 - m2) * (n3 - m2))
                        / r((m1 - m2) * (m1 - m2 + 1))
                }
                _ => r((m1 - n3) * (n3 - m2 + 1)),
            }
        }
        _ => return None,
    };
    Some(v)
}

/// Square of the printed zero-mode coefficient `f_0^(k)` on the `(k, j)`
/// component of `state`.
pub fn printed_f0_squared(s: &GTPattern, k: usize, j: usize, lambda: i64) -> Option<BigRat> {
    let x = s.free_entries();
    let v = match (s.n(), s.p()) {
        (3, 1) => {
            let (n1, n2) = (x[0], x[1]);
            match k {
                1 => r((n1 - n2) * (lambda - n1 + 1)),
                _ => r(n2 * (n1 - n2 + 1)),
            }
        }
        (4, 1) => {
            let (n1, n2, n3) = (x[0], x[1], x[2]);
            match k {
                1 => r((n1 - n2) * (lambda - n1 + 1)),
                2 => r((n2 - n3) * (n1 - n2 + 1)),
                _ => r(n3 * (n2 - n3 + 1)),
            }
        }
        (4, 2) => {
            let (n1, m1, m2, n3) = (x[0], x[1], x[2], x[3]);
            match (k, j) {
                (1, _) => r((m1 - n1 + 1) * (n1 - m2)),
                (2, 1) => {
                    if m1 == m2 {
                        return None;
                    }
                    r((m1 + 1) * (lambda - m1 + 1) * (m1 - n1) * (m1 - n3))
                        / r((m1 - m2 + 1) * (m1 - m2))
                }
                (2, _) => {
                    r(m2 * (lambda - m2 + 2) * (n1 - m2 + 1) * (n3 - m2 + 1))
                        / r((m1 - m2 + 1) * (m1 - m2 + 2))
                }
                _ => r((m1 - n3 + 1) * (n3 - m2)),
            }
        }
        _ => return None,
    };
    Some(v)
}
