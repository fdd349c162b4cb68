//! Rational functions of one variable stored in fully factored form
//!
//! ```text
//! f(z) = scalar * prod_i (z - num_i) / prod_j (z - den_j)
//! ```
//!
//! Root multisets are kept sorted and common factors are cancelled on
//! construction, so structurally equal values compare equal with `==`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Mul;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, BigRat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRatFunc {
    scalar: BigRat,
    num_roots: Vec<BigRat>,
    den_roots: Vec<BigRat>,
}

/// Leading part of the expansion `f(z) = c + sum_j a_j z^{-j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub constant_term: BigRat,
    /// `coefficients[j]` multiplies `z^{-j-1}`.
    pub coefficients: Vec<BigRat>,
}

impl FactoredRatFunc {
    /// Builds `scalar * prod (z - num) / prod (z - den)` and cancels common
    /// roots. A zero scalar yields the canonical zero function.
    pub fn new(scalar: BigRat, mut num_roots: Vec<BigRat>, mut den_roots: Vec<BigRat>) -> Self {
        if scalar.is_zero() {
            return Self::zero();
        }
        num_roots.sort();
        den_roots.sort();
        let (num_roots, den_roots) = cancel_sorted(num_roots, den_roots);
        FactoredRatFunc {
            scalar,
            num_roots,
            den_roots,
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::new(c, Vec::new(), Vec::new())
    }

    pub fn zero() -> Self {
        FactoredRatFunc {
            scalar: BigRat::zero(),
            num_roots: Vec::new(),
            den_roots: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    /// `(z - num) / (z - den)`.
    pub fn ratio(num: BigRat, den: BigRat) -> Self {
        Self::new(BigRat::one(), alloc::vec![num], alloc::vec![den])
    }

    pub fn scalar(&self) -> &BigRat {
        &self.scalar
    }

    pub fn num_roots(&self) -> &[BigRat] {
        &self.num_roots
    }

    pub fn den_roots(&self) -> &[BigRat] {
        &self.den_roots
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Degree of the numerator minus degree of the denominator.
    pub fn degree(&self) -> i64 {
        self.num_roots.len() as i64 - self.den_roots.len() as i64
    }

    /// Distinct poles in increasing order.
    pub fn poles(&self) -> Vec<BigRat> {
        let mut out: Vec<BigRat> = self.den_roots.clone();
        out.dedup();
        out
    }

    /// Order of the pole at `z0` (0 when `z0` is not a pole).
    pub fn pole_order(&self, z0: &BigRat) -> usize {
        self.den_roots.iter().filter(|r| *r == z0).count()
    }

    /// `1 / f`; panics on the zero function.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of the zero function");
        FactoredRatFunc {
            scalar: self.scalar.recip(),
            num_roots: self.den_roots.clone(),
            den_roots: self.num_roots.clone(),
        }
    }

    /// `z -> f(z - c)`.
    pub fn shift(&self, c: &BigRat) -> Self {
        FactoredRatFunc {
            scalar: self.scalar.clone(),
            num_roots: self.num_roots.iter().map(|r| r + c).collect(),
            den_roots: self.den_roots.iter().map(|r| r + c).collect(),
        }
    }

    /// `z -> f(-z)`.
    pub fn reflect(&self) -> Self {
        let mut num: Vec<BigRat> = self.num_roots.iter().map(|r| -r).collect();
        let mut den: Vec<BigRat> = self.den_roots.iter().map(|r| -r).collect();
        num.reverse();
        den.reverse();
        FactoredRatFunc {
            scalar: &self.scalar * rational::sign_pow(self.degree()),
            num_roots: num,
            den_roots: den,
        }
    }

    /// `z -> f(z / sigma)` for `sigma != 0`.
    pub fn rescale_argument(&self, sigma: &BigRat) -> Self {
        assert!(!sigma.is_zero(), "rescaling by zero");
        let scalar = &self.scalar * rational::pow(&sigma.recip(), self.degree());
        Self::new(
            scalar,
            self.num_roots.iter().map(|r| r * sigma).collect(),
            self.den_roots.iter().map(|r| r * sigma).collect(),
        )
    }

    pub fn eval(&self, z0: &BigRat) -> Result<BigRat> {
        if self.den_roots.iter().any(|r| r == z0) {
            return Err(Error::EvalAtPole(z0.clone()));
        }
        let mut v = self.scalar.clone();
        for r in &self.num_roots {
            v *= z0 - r;
        }
        for r in &self.den_roots {
            v /= z0 - r;
        }
        Ok(v)
    }

    /// Residue at a simple pole `z0`.
    pub fn residue_simple(&self, z0: &BigRat) -> Result<BigRat> {
        match self.pole_order(z0) {
            0 => Err(Error::NotAPole(z0.clone())),
            1 => {
                let mut v = self.scalar.clone();
                for r in &self.num_roots {
                    v *= z0 - r;
                }
                for r in self.den_roots.iter().filter(|r| *r != z0) {
                    v /= z0 - r;
                }
                Ok(v)
            }
            order => Err(Error::NotASimplePole {
                point: z0.clone(),
                order,
            }),
        }
    }

    /// Expansion at `z = infinity` up to and including `z^{-order-1}`.
    ///
    /// In the variable `w = 1/z` the function reads
    /// `scalar * w^(d_den - d_num) * prod (1 - a w) / prod (1 - b w)`, which
    /// is a product of truncated power series.
    pub fn series_at_infinity(&self, order: usize) -> Result<SeriesPrefix> {
        let shift = -self.degree();
        if shift < 0 {
            return Err(Error::UnboundedAtInfinity);
        }
        let shift = shift as usize;
        let len = order + 2;
        let mut series = alloc::vec![BigRat::zero(); len];
        if shift < len {
            series[shift] = self.scalar.clone();
        }
        for a in &self.num_roots {
            // multiply by (1 - a w), from the top down
            for t in (1..len).rev() {
                let prev = series[t - 1].clone();
                series[t] -= a * prev;
            }
        }
        for b in &self.den_roots {
            // multiply by 1 / (1 - b w): s_t += b s_{t-1}, from the bottom up
            for t in 1..len {
                let prev = series[t - 1].clone();
                series[t] += b * prev;
            }
        }
        let mut it = series.into_iter();
        let constant_term = it.next().unwrap_or_else(BigRat::zero);
        Ok(SeriesPrefix {
            constant_term,
            coefficients: it.collect(),
        })
    }
}

fn cancel_sorted(num: Vec<BigRat>, den: Vec<BigRat>) -> (Vec<BigRat>, Vec<BigRat>) {
    let mut out_num = Vec::with_capacity(num.len());
    let mut out_den = Vec::with_capacity(den.len());
    let mut i = 0;
    let mut j = 0;
    while i < num.len() && j < den.len() {
        match num[i].cmp(&den[j]) {
            Ordering::Less => {
                out_num.push(num[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out_den.push(den[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out_num.extend_from_slice(&num[i..]);
    out_den.extend_from_slice(&den[j..]);
    (out_num, out_den)
}

impl Mul for &FactoredRatFunc {
    type Output = FactoredRatFunc;

    fn mul(self, rhs: &FactoredRatFunc) -> FactoredRatFunc {
        if self.is_zero() || rhs.is_zero() {
            return FactoredRatFunc::zero();
        }
        let mut num = self.num_roots.clone();
        num.extend_from_slice(&rhs.num_roots);
        let mut den = self.den_roots.clone();
        den.extend_from_slice(&rhs.den_roots);
        FactoredRatFunc::new(&self.scalar * &rhs.scalar, num, den)
    }
}

impl Mul for FactoredRatFunc {
    type Output = FactoredRatFunc;

    fn mul(self, rhs: FactoredRatFunc) -> FactoredRatFunc {
        &self * &rhs
    }
}

impl fmt::Display for FactoredRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.scalar)?;
        for r in &self.num_roots {
            write!(f, " (z - {r})")?;
        }
        if !self.den_roots.is_empty() {
            write!(f, " /")?;
            for r in &self.den_roots {
                write!(f, " (z - {r})")?;
            }
        }
        Ok(())
    }
}
