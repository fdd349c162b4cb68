//! Gelfand-Tsetlin patterns of rectangular highest weight `lambda w_p` and
//! their crystal description.
//!
//! A pattern is the full triangle `m[i][k]` with `1 <= i <= k <= n`. The top
//! row is `(lambda^(n-p), 0^p)`; in row `k` only the entries with
//! `a_k <= i <= b_k` can vary, where
//!
//! ```text
//! a_k = max(1, k - p + 1),   b_k = min(n - p, k).
//! ```
//!
//! Entries left of `a_k` are frozen at `lambda` and entries right of `b_k`
//! are frozen at zero. In the crystal picture entry `m[i][k]` is the number
//! of atoms of type `i` stacked at node `k`.

mod fixed_point;
mod text;

pub use fixed_point::{
    fixed_point_for, fixed_point_matrices, ico_c, ico_i, ico_o, verify_f_terms, FTermReport,
    FixedPoint, Residual,
};
pub use text::{format_pattern, parse_pattern};

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::quiver::{validate, EquivariantParams, LinearForm};
use crate::rational::{frac, int, BigRat};

/// Bounds `(a_k, b_k)` of the free entries in row `k`.
pub fn bounds(n: usize, p: usize, k: usize) -> (usize, usize) {
    ((k + 1).saturating_sub(p).max(1), (n - p).min(k))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTPattern {
    n: usize,
    p: usize,
    lambda: usize,
    /// `rows[k - 1][i - 1] = m[i][k]`, for `k = 1..=n`.
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    /// The pattern whose free entries take the given values, listed in
    /// canonical order (row by row from the bottom, left to right).
    pub fn from_free_entries(n: usize, p: usize, lambda: usize, free: &[i64]) -> Result<Self> {
        validate(n, p, lambda)?;
        let expected: usize = (1..n).map(|k| row_width(n, p, k)).sum();
        if free.len() != expected {
            return Err(Error::IndexOutOfRange(format!(
                "expected {expected} free entries, got {}",
                free.len()
            )));
        }
        let mut rows = frozen_rows(n, p, lambda);
        let mut it = free.iter();
        for k in 1..n {
            let (a, b) = bounds(n, p, k);
            for i in a..=b {
                rows[k - 1][i - 1] = *it.next().expect("length checked");
            }
        }
        let pat = GTPattern { n, p, lambda, rows };
        if !pat.interlaces() {
            return Err(Error::InvalidParams(format!(
                "entries {free:?} violate the interlacing conditions"
            )));
        }
        Ok(pat)
    }

    /// The highest weight state: every free entry at its upper bound.
    pub fn highest(n: usize, p: usize, lambda: usize) -> Result<Self> {
        validate(n, p, lambda)?;
        let mut rows = frozen_rows(n, p, lambda);
        for k in (1..n).rev() {
            let (a, b) = bounds(n, p, k);
            for i in a..=b {
                rows[k - 1][i - 1] = rows[k][i - 1];
            }
        }
        Ok(GTPattern { n, p, lambda, rows })
    }

    /// The vacuum: every free entry at its lower bound.
    pub fn vacuum(n: usize, p: usize, lambda: usize) -> Result<Self> {
        validate(n, p, lambda)?;
        let mut rows = frozen_rows(n, p, lambda);
        for k in (1..n).rev() {
            let (a, b) = bounds(n, p, k);
            for i in a..=b {
                rows[k - 1][i - 1] = rows[k][i];
            }
        }
        Ok(GTPattern { n, p, lambda, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Entry `m[i][k]`, 1-based.
    pub fn m(&self, i: usize, k: usize) -> i64 {
        self.rows[k - 1][i - 1]
    }

    /// Shifted entry `l[i][k] = m[i][k] - i`.
    pub fn l(&self, i: usize, k: usize) -> i64 {
        self.m(i, k) - i as i64
    }

    pub fn row(&self, k: usize) -> &[i64] {
        &self.rows[k - 1]
    }

    pub fn bounds(&self, k: usize) -> (usize, usize) {
        bounds(self.n, self.p, k)
    }

    /// Free entries in canonical order; this is the sort key of a state.
    pub fn free_entries(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for k in 1..self.n {
            let (a, b) = self.bounds(k);
            for i in a..=b {
                out.push(self.m(i, k));
            }
        }
        out
    }

    /// Dimension of the quiver representation at node `k`.
    pub fn node_dimension(&self, k: usize) -> usize {
        let (a, b) = self.bounds(k);
        (a..=b).map(|i| self.m(i, k) as usize).sum()
    }

    /// Total number of atoms.
    pub fn atom_count(&self) -> usize {
        (1..self.n).map(|k| self.node_dimension(k)).sum()
    }

    fn interlaces(&self) -> bool {
        let lam = self.lambda as i64;
        for k in 1..self.n {
            let (a, b) = self.bounds(k);
            for i in 1..=k {
                let v = self.m(i, k);
                if i < a && v != lam {
                    return false;
                }
                if i > b && v != 0 {
                    return false;
                }
                if !(self.m(i, k + 1) >= v && v >= self.m(i + 1, k + 1)) {
                    return false;
                }
            }
        }
        true
    }

    /// The pattern with `m[j][k]` shifted by `delta`, if it is valid.
    pub fn shifted(&self, j: usize, k: usize, delta: i64) -> Option<GTPattern> {
        if k == 0 || k >= self.n || j == 0 || j > k {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[k - 1][j - 1] += delta;
        let pat = GTPattern {
            n: self.n,
            p: self.p,
            lambda: self.lambda,
            rows,
        };
        pat.interlaces().then_some(pat)
    }

    /// `self` plus one atom `(k, j)`.
    pub fn raised(&self, k: usize, j: usize) -> Option<GTPattern> {
        self.shifted(j, k, 1)
    }

    /// `self` minus one atom `(k, j)`.
    pub fn lowered(&self, k: usize, j: usize) -> Option<GTPattern> {
        self.shifted(j, k, -1)
    }

    /// The single free entry in which `other` exceeds `self` by one, if the
    /// two patterns are related by one atom addition.
    pub fn added_atom(&self, other: &GTPattern) -> Option<(usize, usize)> {
        if (self.n, self.p, self.lambda) != (other.n, other.p, other.lambda) {
            return None;
        }
        let mut found = None;
        for k in 1..self.n {
            for i in 1..=k {
                match other.m(i, k) - self.m(i, k) {
                    0 => {}
                    1 if found.is_none() => found = Some((k, i)),
                    _ => return None,
                }
            }
        }
        found
    }
}

fn row_width(n: usize, p: usize, k: usize) -> usize {
    let (a, b) = bounds(n, p, k);
    (b + 1).saturating_sub(a)
}

fn frozen_rows(n: usize, p: usize, lambda: usize) -> Vec<Vec<i64>> {
    let lam = lambda as i64;
    let mut rows: Vec<Vec<i64>> = (1..=n).map(|k| alloc::vec![0; k]).collect();
    for i in 1..=n {
        rows[n - 1][i - 1] = if i <= n - p { lam } else { 0 };
    }
    for k in 1..n {
        let (a, _) = bounds(n, p, k);
        for i in 1..a {
            rows[k - 1][i - 1] = lam;
        }
    }
    rows
}

/// All patterns, sorted lexicographically by their free entries.
pub fn enumerate_patterns(n: usize, p: usize, lambda: usize) -> Result<Vec<GTPattern>> {
    validate(n, p, lambda)?;
    let mut out = Vec::new();
    let mut rows = frozen_rows(n, p, lambda);
    fill_row(n, p, n - 1, 1, &mut rows, lambda, &mut out);
    out.sort_by_key(GTPattern::free_entries);
    Ok(out)
}

fn fill_row(
    n: usize,
    p: usize,
    k: usize,
    i: usize,
    rows: &mut Vec<Vec<i64>>,
    lambda: usize,
    out: &mut Vec<GTPattern>,
) {
    if k == 0 {
        out.push(GTPattern {
            n,
            p,
            lambda,
            rows: rows.clone(),
        });
        return;
    }
    if i > k {
        fill_row(n, p, k - 1, 1, rows, lambda, out);
        return;
    }
    let (a, b) = bounds(n, p, k);
    if i < a || i > b {
        // frozen entry; interlacing holds automatically for rectangular tops
        fill_row(n, p, k, i + 1, rows, lambda, out);
        return;
    }
    let lo = rows[k][i];
    let hi = rows[k][i - 1];
    for v in lo..=hi {
        rows[k - 1][i - 1] = v;
        fill_row(n, p, k, i + 1, rows, lambda, out);
    }
}

/// Dimension of the irreducible `sl_n` module of highest weight
/// `lambda w_p`, by the hook-content product over the `p x (n-p)` rectangle.
pub fn rectangular_dimension(n: usize, p: usize, lambda: usize) -> Result<BigInt> {
    validate(n, p, lambda)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=p {
        for j in 1..=n - p {
            num *= BigInt::from(lambda + i + j - 1);
            den *= BigInt::from(i + j - 1);
        }
    }
    Ok(num / den)
}

/// One atom of the crystal: the `level`-th atom (from 0) of type
/// `type_index` at node `node`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub node: usize,
    pub type_index: usize,
    pub level: usize,
    pub weight: LinearForm,
    pub r_charge: i64,
}

/// Atoms at node `k`, ordered by type and then by level.
///
/// The atom of type `i` at level `lev` has weight
/// `(lev - i + a_k - |k - p|/2) epsilon + (k - p) h` and R-charge
/// `|k - p| + 2 (i - a_k)`.
pub fn node_atoms(pattern: &GTPattern, k: usize) -> Vec<Atom> {
    let (a, b) = pattern.bounds(k);
    let dist = k.abs_diff(pattern.p) as i64;
    let mut out = Vec::new();
    for i in a..=b {
        for lev in 0..pattern.m(i, k).max(0) as usize {
            let c_eps = int(lev as i64 - i as i64 + a as i64) - frac(dist, 2);
            out.push(Atom {
                node: k,
                type_index: i,
                level: lev,
                weight: LinearForm::new(c_eps, int(k as i64 - pattern.p as i64)),
                r_charge: dist + 2 * (i as i64 - a as i64),
            });
        }
    }
    out
}

/// All atoms of the pattern, node by node.
pub fn pattern_atoms(pattern: &GTPattern) -> Vec<Atom> {
    (1..pattern.n)
        .flat_map(|k| node_atoms(pattern, k))
        .collect()
}

/// A box addition or removal `(node, type)` together with its pole in the
/// charge function at that node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub node: usize,
    pub type_index: usize,
    pub pole: BigRat,
}

/// Constant `c_k = (k - p)/2 + 1` in the pole positions at node `k`.
pub fn pole_shift(p: usize, k: usize) -> BigRat {
    frac(k as i64 - p as i64, 2) + int(1)
}

/// Pole of the addition of atom `(k, j)`: `(l[j][k] + c_k) epsilon`.
pub fn add_pole(pattern: &GTPattern, k: usize, j: usize, params: &EquivariantParams) -> BigRat {
    (int(pattern.l(j, k)) + pole_shift(pattern.p, k)) * &params.epsilon
}

/// Pole of the removal of atom `(k, j)`: `(l[j][k] - 1 + c_k) epsilon`.
pub fn remove_pole(pattern: &GTPattern, k: usize, j: usize, params: &EquivariantParams) -> BigRat {
    (int(pattern.l(j, k) - 1) + pole_shift(pattern.p, k)) * &params.epsilon
}

/// Valid additions and removals at node `k`.
pub fn add_remove_sets(
    pattern: &GTPattern,
    k: usize,
    params: &EquivariantParams,
) -> Result<(Vec<Move>, Vec<Move>)> {
    if k == 0 || k >= pattern.n {
        return Err(Error::IndexOutOfRange(format!(
            "node {k} outside 1..={}",
            pattern.n - 1
        )));
    }
    let (a, b) = pattern.bounds(k);
    let mut add = Vec::new();
    let mut rem = Vec::new();
    for j in a..=b {
        if pattern.raised(k, j).is_some() {
            add.push(Move {
                node: k,
                type_index: j,
                pole: add_pole(pattern, k, j, params),
            });
        }
        if pattern.lowered(k, j).is_some() {
            rem.push(Move {
                node: k,
                type_index: j,
                pole: remove_pole(pattern, k, j, params),
            });
        }
    }
    Ok((add, rem))
}
