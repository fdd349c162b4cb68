//! Torus fixed points of the quiver moduli space attached to a pattern.
//!
//! Each atom spans one basis vector at its node. An arrow matrix has a unit
//! entry exactly when the target atom's `(c_eps, c_h, R)` coordinate equals
//! the source atom's coordinate plus the arrow's coordinate.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{node_atoms, Atom, GTPattern};
use crate::error::Result;
use crate::matrix::RationalMatrix;
use crate::quiver::{build_quiver, ArrowId, EquivariantParams, LinearForm, QuiverSpec, Vertex};
use crate::rational::BigRat;

/// `I(n, m)`: the `n x m` matrix with ones on the leading diagonal.
pub fn ico_i(n: usize, m: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, m, |i, j| {
        if i == j {
            BigRat::one()
        } else {
            BigRat::zero()
        }
    })
}

/// `C(n)`: the nilpotent shift sending basis vector `i` to `i + 1`.
pub fn ico_c(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |i, j| {
        if i == j + 1 {
            BigRat::one()
        } else {
            BigRat::zero()
        }
    })
}

/// `O(n, m)`: the zero matrix.
pub fn ico_o(n: usize, m: usize) -> RationalMatrix {
    RationalMatrix::zeros(n, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub pattern: GTPattern,
    pub quiver: QuiverSpec,
    /// `atoms[k - 1]` lists the basis of the space at node `k`.
    pub atoms: Vec<Vec<Atom>>,
    pub arrows: BTreeMap<ArrowId, RationalMatrix>,
}

impl FixedPoint {
    pub fn dim(&self, v: Vertex) -> usize {
        match v {
            Vertex::Gauge(k) => self.atoms[k - 1].len(),
            Vertex::Framing => 1,
        }
    }

    /// `(weight, R-charge)` of basis vector `idx` at vertex `v`.
    pub fn coordinate(&self, v: Vertex, idx: usize) -> (LinearForm, i64) {
        match v {
            Vertex::Gauge(k) => {
                let a = &self.atoms[k - 1][idx];
                (a.weight.clone(), a.r_charge)
            }
            Vertex::Framing => (LinearForm::zero(), 0),
        }
    }

    pub fn weight(&self, v: Vertex, idx: usize) -> LinearForm {
        self.coordinate(v, idx).0
    }

    pub fn arrow(&self, id: ArrowId) -> &RationalMatrix {
        &self.arrows[&id]
    }

    /// Diagonal matrix of the atom weights at `v`, evaluated at `params`.
    pub fn phi(&self, v: Vertex, params: &EquivariantParams) -> RationalMatrix {
        let d: Vec<BigRat> = (0..self.dim(v))
            .map(|i| self.weight(v, i).eval(params))
            .collect();
        RationalMatrix::diagonal(&d)
    }
}

/// Fixed point of the standard quiver (one framing pair at `p`).
pub fn fixed_point_matrices(pattern: &GTPattern) -> Result<FixedPoint> {
    let quiver = build_quiver(pattern.n(), pattern.p(), pattern.lambda())?;
    Ok(fixed_point_for(&quiver, pattern))
}

/// Fixed point of `pattern` on an arbitrary compatible quiver.
pub fn fixed_point_for(quiver: &QuiverSpec, pattern: &GTPattern) -> FixedPoint {
    let atoms: Vec<Vec<Atom>> = (1..pattern.n()).map(|k| node_atoms(pattern, k)).collect();
    let mut fp = FixedPoint {
        pattern: pattern.clone(),
        quiver: quiver.clone(),
        atoms,
        arrows: BTreeMap::new(),
    };
    for arrow in &quiver.arrows {
        let rows = fp.dim(arrow.target);
        let cols = fp.dim(arrow.source);
        let m = RationalMatrix::from_fn(rows, cols, |r, c| {
            let (tw, tr) = fp.coordinate(arrow.target, r);
            let (sw, sr) = fp.coordinate(arrow.source, c);
            if tw == &sw + &arrow.weight && tr == sr + arrow.r_charge {
                BigRat::one()
            } else {
                BigRat::zero()
            }
        });
        fp.arrows.insert(arrow.id, m);
    }
    fp
}

/// A named matrix identity together with the largest entry of its residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub relation: String,
    pub max_abs: BigRat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTermReport {
    pub residuals: Vec<Residual>,
}

impl FTermReport {
    pub fn ok(&self) -> bool {
        self.residuals.iter().all(|r| r.max_abs.is_zero())
    }
}

/// Product of the arrow matrices of `word`, read left to right, as a map
/// out of `start` (the source of the last letter).
fn word_product(fp: &FixedPoint, word: &[ArrowId], start: Vertex) -> RationalMatrix {
    let mut acc: Option<RationalMatrix> = None;
    for id in word {
        let m = fp.arrow(*id);
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => a.matmul(m),
        });
    }
    acc.unwrap_or_else(|| RationalMatrix::identity(fp.dim(start)))
}

/// Cyclic derivative `dW/dJ` evaluated at the fixed point, as a matrix from
/// the target of `J` to its source.
pub(crate) fn cyclic_derivative(fp: &FixedPoint, j: ArrowId) -> RationalMatrix {
    let arrow = fp.quiver.arrow(j);
    let mut total = RationalMatrix::zeros(fp.dim(arrow.source), fp.dim(arrow.target));
    for term in &fp.quiver.superpotential {
        for (pos, id) in term.word.iter().enumerate() {
            if *id != j {
                continue;
            }
            let mut rest: Vec<ArrowId> = term.word[pos + 1..].to_vec();
            rest.extend_from_slice(&term.word[..pos]);
            let prod = word_product(fp, &rest, arrow.target);
            let signed = prod.scale(&crate::rational::int(term.sign));
            total = &total + &signed;
        }
    }
    total
}

/// Checks every F-term `dW/dI = 0` and every fixed-point equation
/// `Phi_t q_I - q_I Phi_s = w_I q_I` at `params`.
pub fn verify_f_terms(fp: &FixedPoint, params: &EquivariantParams) -> FTermReport {
    let mut residuals = Vec::new();
    for arrow in &fp.quiver.arrows {
        let d = cyclic_derivative(fp, arrow.id);
        residuals.push(Residual {
            relation: format!("dW/d{}", arrow.id),
            max_abs: d.max_abs(),
        });
    }
    for arrow in &fp.quiver.arrows {
        let q = fp.arrow(arrow.id);
        let lhs =
            &fp.phi(arrow.target, params).matmul(q) - &q.matmul(&fp.phi(arrow.source, params));
        let res = &lhs - &q.scale(&arrow.weight.eval(params));
        residuals.push(Residual {
            relation: format!("fixed point {}", arrow.id),
            max_abs: res.max_abs(),
        });
    }
    FTermReport { residuals }
}
