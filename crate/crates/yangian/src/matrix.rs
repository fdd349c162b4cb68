//! Dense matrices over the rationals with fraction-free elimination.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::BigRat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRat>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: alloc::vec![BigRat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigRat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RationalMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn diagonal(entries: &[BigRat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    /// Largest absolute value of an entry, zero for empty matrices.
    pub fn max_abs(&self) -> BigRat {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRat::zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &BigRat) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// Matrix product that skips zero entries of the left factor, which keeps
    /// the sparse weight-graded operators used throughout the crate cheap.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    /// `A B - B A`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        &a.matmul(b) - &b.matmul(a)
    }

    /// `A B + B A`.
    pub fn anticommutator(a: &Self, b: &Self) -> Self {
        &a.matmul(b) + &b.matmul(a)
    }

    /// Clears denominators row by row, producing an integer matrix with the
    /// same row space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| (v * &l).to_integer()).collect()
            })
            .collect()
    }

    /// Fraction-free (Bareiss) row echelon form. Returns the echelon rows and
    /// the pivot column of each nonzero row.
    pub fn echelon_fraction_free(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut m = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                let f = m[i][c].clone();
                for j in c..self.cols {
                    // det-preserving update; the division by the previous
                    // pivot is exact
                    let v = (&m[r][c] * &m[i][j] - &f * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                for x in m[i].iter_mut().take(c) {
                    *x = BigInt::zero();
                }
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon_fraction_free().1.len()
    }

    /// Basis of the right null space, one column vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRat>> {
        let (ech, pivots) = self.echelon_fraction_free();
        let mut is_pivot = alloc::vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = alloc::vec![BigRat::zero(); self.cols];
            x[free] = BigRat::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut s = BigRat::zero();
                for c in pc + 1..self.cols {
                    if !ech[r][c].is_zero() && !x[c].is_zero() {
                        s += BigRat::from_integer(ech[r][c].clone()) * &x[c];
                    }
                }
                x[pc] = -s / BigRat::from_integer(ech[r][pc].clone());
            }
            basis.push(x);
        }
        basis
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[BigRat]) -> Vec<BigRat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;

    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.matmul(rhs)
    }
}
