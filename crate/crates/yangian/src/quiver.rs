//! The framed cyclic quiver of `sl_n`, its superpotential and equivariant
//! weights.
//!
//! Gauge nodes are labelled `1..=n-1`. Every node carries a loop `C_k`,
//! neighbouring nodes are joined by `A_k: k -> k+1` and `B_k: k+1 -> k`, and
//! the framing node is attached to node `p` by `R_p: f -> p` and
//! `S_p: p -> f`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::ratfunc::FactoredRatFunc;
use crate::rational::{frac, int, BigRat};

/// Equivariant parameters `(epsilon, h)`; `epsilon` is never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantParams {
    pub epsilon: BigRat,
    pub h: BigRat,
}

impl EquivariantParams {
    pub fn new(epsilon: BigRat, h: BigRat) -> Result<Self> {
        if epsilon.is_zero() {
            return Err(Error::InvalidParams("epsilon must be nonzero".into()));
        }
        Ok(EquivariantParams { epsilon, h })
    }

    /// Parameters with `h = 0`, the specialisation used by the amplitudes.
    pub fn with_epsilon(epsilon: BigRat) -> Result<Self> {
        Self::new(epsilon, BigRat::zero())
    }

    pub fn require_h_zero(&self, what: &str) -> Result<()> {
        if self.h.is_zero() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("{what} requires h = 0")))
        }
    }
}

/// A weight `c_eps * epsilon + c_h * h`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub c_eps: BigRat,
    pub c_h: BigRat,
}

impl LinearForm {
    pub fn new(c_eps: BigRat, c_h: BigRat) -> Self {
        LinearForm { c_eps, c_h }
    }

    pub fn zero() -> Self {
        Self::new(BigRat::zero(), BigRat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c_eps.is_zero() && self.c_h.is_zero()
    }

    pub fn eval(&self, params: &EquivariantParams) -> BigRat {
        &self.c_eps * &params.epsilon + &self.c_h * &params.h
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: &LinearForm) -> LinearForm {
        LinearForm::new(&self.c_eps + &rhs.c_eps, &self.c_h + &rhs.c_h)
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: &LinearForm) -> LinearForm {
        LinearForm::new(&self.c_eps - &rhs.c_eps, &self.c_h - &rhs.c_h)
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;

    fn neg(self) -> LinearForm {
        LinearForm::new(-&self.c_eps, -&self.c_h)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} eps + {} h", self.c_eps, self.c_h)
    }
}

/// Arrow labels; the index is the node (or the lower node for `A` and `B`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArrowId {
    A(usize),
    B(usize),
    C(usize),
    R(usize),
    S(usize),
}

impl ArrowId {
    pub fn is_framing(&self) -> bool {
        matches!(self, ArrowId::R(_) | ArrowId::S(_))
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowId::A(k) => write!(f, "A{k}"),
            ArrowId::B(k) => write!(f, "B{k}"),
            ArrowId::C(k) => write!(f, "C{k}"),
            ArrowId::R(k) => write!(f, "R{k}"),
            ArrowId::S(k) => write!(f, "S{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Gauge(usize),
    Framing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: ArrowId,
    pub source: Vertex,
    pub target: Vertex,
    pub weight: LinearForm,
    pub r_charge: i64,
}

/// A signed cyclic word of the superpotential.
///
/// Words are read as matrix products from left to right, so for a word
/// `X_1 X_2 ... X_m` the source of `X_i` is the target of `X_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i64,
    pub word: Vec<ArrowId>,
}

impl Term {
    /// Whether the word passes through the framing node.
    pub fn is_framing(&self) -> bool {
        self.word.iter().any(ArrowId::is_framing)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverSpec {
    pub n: usize,
    pub p: usize,
    pub lambda: usize,
    pub arrows: Vec<Arrow>,
    pub superpotential: Vec<Term>,
    /// Framing pairs `R_a, S_a` are attached to every node, with vanishing
    /// framing weight away from `p`.
    pub all_framings: bool,
}

pub fn validate(n: usize, p: usize, lambda: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least 2")));
    }
    if p < 1 || p > n - 1 {
        return Err(Error::InvalidParams(format!(
            "p = {p} must lie in 1..={}",
            n - 1
        )));
    }
    let _ = lambda;
    Ok(())
}

/// The quiver with a single framing pair at node `p`.
pub fn build_quiver(n: usize, p: usize, lambda: usize) -> Result<QuiverSpec> {
    build(n, p, lambda, false)
}

/// The quiver with framing pairs at every node. Only the pair at `p` enters
/// the superpotential.
pub fn build_quiver_all_framings(n: usize, p: usize, lambda: usize) -> Result<QuiverSpec> {
    build(n, p, lambda, true)
}

fn build(n: usize, p: usize, lambda: usize, all_framings: bool) -> Result<QuiverSpec> {
    validate(n, p, lambda)?;
    let g = Vertex::Gauge;
    let mut arrows = Vec::new();
    for k in 1..n {
        arrows.push(Arrow {
            id: ArrowId::C(k),
            source: g(k),
            target: g(k),
            weight: LinearForm::new(int(1), int(0)),
            r_charge: 0,
        });
    }
    for k in 1..n.saturating_sub(1) {
        arrows.push(Arrow {
            id: ArrowId::A(k),
            source: g(k),
            target: g(k + 1),
            weight: LinearForm::new(frac(-1, 2), int(1)),
            r_charge: 1,
        });
        arrows.push(Arrow {
            id: ArrowId::B(k),
            source: g(k + 1),
            target: g(k),
            weight: LinearForm::new(frac(-1, 2), int(-1)),
            r_charge: 1,
        });
    }
    for a in 1..n {
        if a != p && !all_framings {
            continue;
        }
        let lambda_a = if a == p { lambda as i64 } else { 0 };
        arrows.push(Arrow {
            id: ArrowId::R(a),
            source: Vertex::Framing,
            target: g(a),
            weight: LinearForm::zero(),
            r_charge: 0,
        });
        arrows.push(Arrow {
            id: ArrowId::S(a),
            source: g(a),
            target: Vertex::Framing,
            weight: LinearForm::new(int(-lambda_a), int(0)),
            r_charge: 2,
        });
    }

    let mut w = Vec::new();
    if n >= 3 {
        use ArrowId::{A, B, C};
        w.push(Term {
            sign: 1,
            word: alloc::vec![A(1), C(1), B(1)],
        });
        for a in 2..n - 1 {
            w.push(Term {
                sign: 1,
                word: alloc::vec![A(a), C(a), B(a)],
            });
            w.push(Term {
                sign: -1,
                word: alloc::vec![B(a - 1), C(a), A(a - 1)],
            });
        }
        w.push(Term {
            sign: -1,
            word: alloc::vec![B(n - 2), C(n - 1), A(n - 2)],
        });
    }
    let mut framing_word = alloc::vec![ArrowId::C(p); lambda];
    framing_word.push(ArrowId::R(p));
    framing_word.push(ArrowId::S(p));
    w.push(Term {
        sign: 1,
        word: framing_word,
    });

    Ok(QuiverSpec {
        n,
        p,
        lambda,
        arrows,
        superpotential: w,
        all_framings,
    })
}

impl QuiverSpec {
    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        self.arrows
            .iter()
            .find(|a| a.id == id)
            .unwrap_or_else(|| panic!("arrow {id} is not part of the quiver"))
    }

    pub fn has_arrow(&self, id: ArrowId) -> bool {
        self.arrows.iter().any(|a| a.id == id)
    }

    pub fn gauge_arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(|a| !a.id.is_framing())
    }

    /// Weight of the framing arrow `S_a`: `-lambda epsilon` at `p`, zero
    /// elsewhere.
    pub fn framing_weight(&self, a: usize) -> BigRat {
        if a == self.p {
            -int(self.lambda as i64)
        } else {
            BigRat::zero()
        }
    }
}

/// The bond factor
///
/// ```text
/// phi_ab(z) = prod_{I: b -> a} (z + h_I) / prod_{I: a -> b} (z - h_I)
/// ```
///
/// built from the gauge arrows between nodes `a` and `b`.
pub fn bond_factor(
    spec: &QuiverSpec,
    a: usize,
    b: usize,
    params: &EquivariantParams,
) -> FactoredRatFunc {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for arrow in spec.gauge_arrows() {
        let w = arrow.weight.eval(params);
        if arrow.source == Vertex::Gauge(b) && arrow.target == Vertex::Gauge(a) {
            num.push(-w.clone());
        }
        if arrow.source == Vertex::Gauge(a) && arrow.target == Vertex::Gauge(b) {
            den.push(w);
        }
    }
    FactoredRatFunc::new(crate::rational::one(), num, den)
}

/// Net number of arrows `a -> b` minus `b -> a`.
pub fn chirality(spec: &QuiverSpec, a: usize, b: usize) -> i64 {
    let count = |s: usize, t: usize| {
        spec.gauge_arrows()
            .filter(|x| x.source == Vertex::Gauge(s) && x.target == Vertex::Gauge(t))
            .count() as i64
    };
    count(a, b) - count(b, a)
}

/// Cartan matrix of `sl_n`, indexed from node 1 at position 0.
pub fn cartan_matrix(n: usize) -> Vec<Vec<i64>> {
    (1..n)
        .map(|a| {
            (1..n)
                .map(|b| match a.abs_diff(b) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopCheck {
    pub word: String,
    pub weight_sum: LinearForm,
    pub r_charge_sum: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCheck {
    pub node: usize,
    pub residual: LinearForm,
    pub value: BigRat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintReport {
    pub loops: Vec<LoopCheck>,
    pub vertices: Vec<VertexCheck>,
    /// Rank of the loop constraints restricted to the `C` weights.
    pub c_weight_rank: usize,
}

impl ConstraintReport {
    /// Every superpotential word has weight 0 and R-charge 2.
    pub fn loops_ok(&self) -> bool {
        self.loops
            .iter()
            .all(|l| l.weight_sum.is_zero() && l.r_charge_sum == 2)
    }

    /// Vertex residuals sum to zero over the nodes.
    pub fn vertices_balance(&self) -> bool {
        self.vertices
            .iter()
            .fold(LinearForm::zero(), |acc, v| &acc + &v.residual)
            .is_zero()
    }
}

/// Loop and vertex constraints on the arrow weights.
///
/// The vertex residual at a node is the sum of incoming minus outgoing gauge
/// weights; it is `-2h` at node 1, `+2h` at node `n-1` and zero in between.
pub fn check_constraints(spec: &QuiverSpec, params: &EquivariantParams) -> ConstraintReport {
    let mut loops = Vec::new();
    for term in &spec.superpotential {
        let mut weight = LinearForm::zero();
        let mut r = 0;
        let mut name = String::new();
        for id in &term.word {
            let arrow = spec.arrow(*id);
            weight = &weight + &arrow.weight;
            r += arrow.r_charge;
            name.push_str(&format!("{id}"));
        }
        loops.push(LoopCheck {
            word: name,
            weight_sum: weight,
            r_charge_sum: r,
        });
    }
    let mut vertices = Vec::new();
    for k in 1..spec.n {
        let mut res = LinearForm::zero();
        for arrow in spec.gauge_arrows() {
            if arrow.target == Vertex::Gauge(k) {
                res = &res + &arrow.weight;
            }
            if arrow.source == Vertex::Gauge(k) {
                res = &res - &arrow.weight;
            }
        }
        let value = res.eval(params);
        vertices.push(VertexCheck {
            node: k,
            residual: res,
            value,
        });
    }

    // one row per word, one column per loop C_k; entries count occurrences
    let c_count: BTreeMap<usize, usize> = (1..spec.n).map(|k| (k, k - 1)).collect();
    let m = RationalMatrix::from_fn(spec.superpotential.len(), spec.n - 1, |i, j| {
        let hits = spec.superpotential[i]
            .word
            .iter()
            .filter(|id| matches!(id, ArrowId::C(k) if c_count[k] == j))
            .count();
        int(hits as i64)
    });
    ConstraintReport {
        loops,
        vertices,
        c_weight_rank: m.rank(),
    }
}
