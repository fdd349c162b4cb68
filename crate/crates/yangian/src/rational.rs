//! Exact rational scalars and their canonical text form.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always kept in lowest terms.
pub type BigRat = num_rational::BigRational;

/// The rational `v / 1`.
pub fn int(v: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(v))
}

/// The rational `num / den`; panics when `den == 0`.
pub fn frac(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> BigRat {
    BigRat::zero()
}

pub fn one() -> BigRat {
    BigRat::one()
}

/// Renders `r` as `"P/Q"` with `Q >= 1`, including `Q = 1`.
pub fn to_text(r: &BigRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"P/Q"` or a bare integer `"P"`.
pub fn parse(text: &str) -> Result<BigRat> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{text}` is not a rational number")))
    };
    match text.split_once('/') {
        None => Ok(BigRat::from_integer(parse_int(text)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("`{text}` has a zero denominator")));
            }
            Ok(BigRat::new(parse_int(p)?, q))
        }
    }
}

/// `r^e` for a possibly negative exponent; panics on `0^e` with `e < 0`.
pub fn pow(r: &BigRat, e: i64) -> BigRat {
    let mut acc = BigRat::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// `(-1)^e`.
pub fn sign_pow(e: i64) -> BigRat {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

pub fn abs(r: &BigRat) -> BigRat {
    r.abs()
}
