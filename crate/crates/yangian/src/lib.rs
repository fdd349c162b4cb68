//! Exact construction of the rectangular representations of the Yangians
//! `Y(sl_n)` built from the crystal melting picture of the cyclic quiver
//! with potential.
//!
//! Everything in this crate is computed over the rationals. The equivariant
//! parameter `epsilon` and the flavour parameter `h` are kept as
//! [`BigRat`](rational::BigRat) values, so that every identity is checked
//! exactly rather than up to a tolerance.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! Module map:
//!
//! * [`rational`], [`ratfunc`], [`matrix`]: exact scalars, factored rational
//!   functions of the spectral parameter and dense rational matrices.
//! * [`quiver`]: the quiver, superpotential, equivariant weights and bond
//!   factors.
//! * [`gt`]: Gelfand-Tsetlin patterns, their crystal atoms and the
//!   fixed-point quiver representations.
//! * [`amplitudes`]: charge functions and the raising/lowering amplitudes.
//! * [`localization`]: graded tangent spaces, Euler classes and amplitudes
//!   recovered from incidence loci.
//! * [`modes`] and [`verify`]: mode operators and the exact relation checks.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod amplitudes;
pub mod error;
pub mod gt;
pub mod localization;
pub mod matrix;
pub mod modes;
pub mod quiver;
pub mod ratfunc;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use rational::BigRat;
