use alloc::string::String;
use core::fmt;

use crate::rational::BigRat;

/// Errors produced by the exact algebra and the verifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A rational function was evaluated at one of its poles.
    EvalAtPole(BigRat),
    /// A residue was requested at a pole of order higher than one.
    NotASimplePole { point: BigRat, order: usize },
    /// A residue was requested at a point that is not a pole.
    NotAPole(BigRat),
    /// A series at infinity was requested for a function that grows there.
    UnboundedAtInfinity,
    /// The `(n, p, lambda, epsilon, h)` data is outside the supported range.
    InvalidParams(String),
    /// A node, row or entry index is outside the pattern.
    IndexOutOfRange(String),
    /// A requested box addition or removal does not name a move.
    InvalidMove(String),
    /// A fixed point has a non-trivial stabiliser in the gauge group.
    StabilityViolation(String),
    /// Two fixed points do not differ by a single atom.
    NotAdjacent(String),
    /// Malformed textual input such as a pattern or a rational number.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EvalAtPole(z) => write!(f, "evaluation at the pole z = {z}"),
            Error::NotASimplePole { point, order } => {
                write!(
                    f,
                    "z = {point} is a pole of order {order}, not a simple pole"
                )
            }
            Error::NotAPole(z) => write!(f, "z = {z} is not a pole"),
            Error::UnboundedAtInfinity => write!(f, "function is unbounded at infinity"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::IndexOutOfRange(msg) => write!(f, "index out of range: {msg}"),
            Error::InvalidMove(msg) => write!(f, "invalid move: {msg}"),
            Error::StabilityViolation(msg) => write!(f, "stability violation: {msg}"),
            Error::NotAdjacent(msg) => write!(f, "fixed points are not adjacent: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
