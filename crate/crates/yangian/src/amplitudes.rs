//! Charge functions `Psi^(k)(z)` and the matrix elements of the raising and
//! lowering generators on the pattern basis.
//!
//! All formulas here are specialised to `h = 0`. Amplitudes are
//! normalised with the framing node carrying the `-1/epsilon` prefactor of
//! the charge function; away from the framing node the raising amplitude
//! carries `1 / (x epsilon)` and the lowering amplitude `x' epsilon`, where
//! `x` is the `epsilon` coordinate of the new atom.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gt::{add_pole, bounds, node_atoms, pole_shift, remove_pole, GTPattern};
use crate::quiver::{bond_factor, build_quiver, EquivariantParams};
use crate::ratfunc::FactoredRatFunc;
use crate::rational::{frac, int, one, BigRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmplitudeKind {
    /// `e`: adds an atom.
    Raise,
    /// `f`: removes an atom.
    Lower,
}

impl AmplitudeKind {
    pub fn label(&self) -> &'static str {
        match self {
            AmplitudeKind::Raise => "E",
            AmplitudeKind::Lower => "F",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiFunction {
    pub node: usize,
    pub pattern: GTPattern,
    pub value: FactoredRatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amplitude {
    pub kind: AmplitudeKind,
    pub node: usize,
    pub type_index: usize,
    /// Pattern the amplitude acts on.
    pub source: GTPattern,
    /// Pattern it maps to, `None` when the move leaves the crystal.
    pub target: Option<GTPattern>,
    pub value: BigRat,
}

/// Which closed form to use for the lowering amplitude at the framing node.
///
/// `AsPrinted` drops the `+1` in the leading factor. It does not satisfy the
/// `E F = res Psi` identity and exists only as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoweringForm {
    Corrected,
    AsPrinted,
}

fn check_node(pattern: &GTPattern, k: usize) -> Result<()> {
    if k == 0 || k >= pattern.n() {
        return Err(Error::IndexOutOfRange(format!(
            "node {k} outside 1..={}",
            pattern.n() - 1
        )));
    }
    Ok(())
}

fn check_move(pattern: &GTPattern, k: usize, j: usize) -> Result<()> {
    check_node(pattern, k)?;
    let (a, b) = pattern.bounds(k);
    if j < a || j > b {
        return Err(Error::IndexOutOfRange(format!(
            "type {j} outside {a}..={b} at node {k}"
        )));
    }
    Ok(())
}

/// Charge function from the bond factors:
///
/// ```text
/// Psi^(k)(z) = -1/epsilon * [(z - lambda epsilon)/z if k = p]
///              * prod_atoms phi_{k, node(atom)}(z - weight(atom))
/// ```
pub fn psi_generic(
    pattern: &GTPattern,
    k: usize,
    params: &EquivariantParams,
) -> Result<PsiFunction> {
    check_node(pattern, k)?;
    params.require_h_zero("psi_generic")?;
    let quiver = build_quiver(pattern.n(), pattern.p(), pattern.lambda())?;
    let eps = &params.epsilon;
    let mut value = FactoredRatFunc::constant(-eps.recip());
    if k == pattern.p() {
        let lam = int(pattern.lambda() as i64) * eps;
        value = &value * &FactoredRatFunc::ratio(lam, BigRat::zero());
    }
    for node in 1..pattern.n() {
        if node.abs_diff(k) > 1 {
            continue;
        }
        let bond = bond_factor(&quiver, k, node, params);
        for atom in node_atoms(pattern, node) {
            let w = atom.weight.eval(params);
            value = &value * &bond.shift(&w);
        }
    }
    Ok(PsiFunction {
        node: k,
        pattern: pattern.clone(),
        value,
    })
}

/// Closed form with `c_k = (k - p)/2 + 1`:
///
/// ```text
/// Psi^(k)(z) = -1/epsilon
///   * prod_{i<k} (z - (l[i][k-1] + c_k - 1) eps) * prod_{i<=k+1} (z - (l[i][k+1] + c_k) eps)
///   / prod_{i<=k} (z - (l[i][k] + c_k) eps) (z - (l[i][k] + c_k - 1) eps)
/// ```
pub fn psi_closed_form(
    pattern: &GTPattern,
    k: usize,
    params: &EquivariantParams,
) -> Result<PsiFunction> {
    check_node(pattern, k)?;
    params.require_h_zero("psi_closed_form")?;
    let eps = &params.epsilon;
    let c = pole_shift(pattern.p(), k);
    let at = |l: i64, shift: &BigRat| (int(l) + shift) * eps;
    let c_minus = &c - one();
    let mut num = Vec::new();
    for i in 1..k {
        num.push(at(pattern.l(i, k - 1), &c_minus));
    }
    for i in 1..=k + 1 {
        num.push(at(pattern.l(i, k + 1), &c));
    }
    let mut den = Vec::new();
    for i in 1..=k {
        den.push(at(pattern.l(i, k), &c));
        den.push(at(pattern.l(i, k), &c_minus));
    }
    Ok(PsiFunction {
        node: k,
        pattern: pattern.clone(),
        value: FactoredRatFunc::new(-eps.recip(), num, den),
    })
}

/// `epsilon` coordinate `l + a_k - |k - p|/2` of the atom of type `j` whose
/// shifted entry is `l`. A vanishing coordinate is replaced by 1, which
/// amounts to rescaling one basis vector; see [`amplitude_e`].
fn atom_coordinate(pattern: &GTPattern, k: usize, l: i64) -> BigRat {
    let (a, _) = pattern.bounds(k);
    let x = int(l + a as i64) - frac(k.abs_diff(pattern.p()) as i64, 2);
    if x.is_zero() {
        one()
    } else {
        x
    }
}

fn prod(it: impl Iterator<Item = i64>) -> BigRat {
    it.fold(one(), |acc, v| acc * int(v))
}

/// Raising amplitude `E[pattern -> pattern + (k, j)]`.
///
/// Returns 0 when the target is not a valid pattern, before any formula is
/// evaluated. At the framing node
///
/// ```text
/// E = -prod_{i=2..j}(l[i][k+1] - l_j) prod_{i<j}(l[i][k-1] - l_j - 1)
///     / prod_{i<j}(l[i][k] - l_j)(l[i][k] - l_j - 1) / epsilon
/// ```
///
/// and elsewhere the first product starts at `i = 1`, there is no sign and
/// the result is divided by `x epsilon` with `x = l_j + a_k - |k - p|/2`.
/// For `x = 0` (only possible for patterns on the boundary of the crystal)
/// the factor is replaced by `epsilon`.
pub fn amplitude_e(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    params: &EquivariantParams,
) -> Result<Amplitude> {
    check_move(pattern, k, j)?;
    params.require_h_zero("amplitude_e")?;
    let target = pattern.raised(k, j);
    let value = if target.is_none() {
        BigRat::zero()
    } else {
        raise_value(pattern, k, j, &params.epsilon)
    };
    Ok(Amplitude {
        kind: AmplitudeKind::Raise,
        node: k,
        type_index: j,
        source: pattern.clone(),
        target,
        value,
    })
}

fn raise_value(pattern: &GTPattern, k: usize, j: usize, eps: &BigRat) -> BigRat {
    let lj = pattern.l(j, k);
    let at_framing = k == pattern.p();
    let start = if at_framing { 2 } else { 1 };
    let num = prod((start..=j).map(|i| pattern.l(i, k + 1) - lj))
        * prod((1..j).map(|i| pattern.l(i, k - 1) - lj - 1));
    let den = prod((1..j).map(|i| (pattern.l(i, k) - lj) * (pattern.l(i, k) - lj - 1)));
    assert!(
        !num.is_zero() && !den.is_zero(),
        "degenerate raising amplitude on a valid move"
    );
    if at_framing {
        -num / den / eps
    } else {
        num / den / (atom_coordinate(pattern, k, lj) * eps)
    }
}

/// Lowering amplitude `F[pattern -> pattern - (k, j)]`.
///
/// With
///
/// ```text
/// N = prod_{i=j+1..k+1}(l[i][k+1] - l_j + 1) prod_{i=j..k-1}(l[i][k-1] - l_j)
/// D = prod_{i=j+1..k}(l[i][k] - l_j + 1)(l[i][k] - l_j)
/// ```
///
/// the framing node gives `(l[1][k+1] - l_j + 1) N / D epsilon` and the
/// other nodes `-N / D x' epsilon` with `x' = l_j - 1 + a_k - |k - p|/2`
/// (again replaced by 1 when it vanishes).
pub fn amplitude_f(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    params: &EquivariantParams,
) -> Result<Amplitude> {
    amplitude_f_with(pattern, k, j, params, LoweringForm::Corrected)
}

pub fn amplitude_f_with(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    params: &EquivariantParams,
    form: LoweringForm,
) -> Result<Amplitude> {
    check_move(pattern, k, j)?;
    params.require_h_zero("amplitude_f")?;
    let target = pattern.lowered(k, j);
    let value = if target.is_none() {
        BigRat::zero()
    } else {
        lower_value(pattern, k, j, &params.epsilon, form)
    };
    Ok(Amplitude {
        kind: AmplitudeKind::Lower,
        node: k,
        type_index: j,
        source: pattern.clone(),
        target,
        value,
    })
}

fn lower_value(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    eps: &BigRat,
    form: LoweringForm,
) -> BigRat {
    let lj = pattern.l(j, k);
    let num = prod((j + 1..=k + 1).map(|i| pattern.l(i, k + 1) - lj + 1))
        * prod((j..k).map(|i| pattern.l(i, k - 1) - lj));
    let den = prod((j + 1..=k).map(|i| (pattern.l(i, k) - lj + 1) * (pattern.l(i, k) - lj)));
    assert!(
        !num.is_zero() && !den.is_zero(),
        "degenerate lowering amplitude on a valid move"
    );
    if k == pattern.p() {
        let shift = match form {
            LoweringForm::Corrected => 1,
            LoweringForm::AsPrinted => 0,
        };
        int(pattern.l(1, k + 1) - lj + shift) * num / den * eps
    } else {
        -num / den * atom_coordinate(pattern, k, lj - 1) * eps
    }
}

/// Pole in `Psi^(k)` created (`Raise`) or removed (`Lower`) by the move.
pub fn move_pole(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    kind: AmplitudeKind,
    params: &EquivariantParams,
) -> BigRat {
    match kind {
        AmplitudeKind::Raise => add_pole(pattern, k, j, params),
        AmplitudeKind::Lower => remove_pole(pattern, k, j, params),
    }
}

/// Squared matrix element `E[pattern -> target] F[target -> pattern]`
/// (`Raise`) or `F[pattern -> target] E[target -> pattern]` (`Lower`).
/// The powers of `epsilon` cancel in the product. Invalid targets give 0.
pub fn gelfand_squared(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    direction: AmplitudeKind,
    params: &EquivariantParams,
) -> Result<BigRat> {
    check_move(pattern, k, j)
        .map_err(|e| Error::InvalidMove(format!("({k}, {j}) is not a move: {e}")))?;
    params.require_h_zero("gelfand_squared")?;
    let product = match direction {
        AmplitudeKind::Raise => match pattern.raised(k, j) {
            None => return Ok(BigRat::zero()),
            Some(t) => {
                amplitude_e(pattern, k, j, params)?.value * amplitude_f(&t, k, j, params)?.value
            }
        },
        AmplitudeKind::Lower => match pattern.lowered(k, j) {
            None => return Ok(BigRat::zero()),
            Some(t) => {
                amplitude_f(pattern, k, j, params)?.value * amplitude_e(&t, k, j, params)?.value
            }
        },
    };
    Ok(product)
}

/// The classical Gelfand-Tsetlin squares
///
/// ```text
/// a^2 = -prod_{i<=k+1}(l[i][k+1] - l_j) prod_{i<=k-1}(l[i][k-1] - l_j - 1)
///       / prod_{i != j}(l[i][k] - l_j)(l[i][k] - l_j - 1)
/// b^2 = -prod_{i<=k+1}(l[i][k+1] - l_j + 1) prod_{i<=k-1}(l[i][k-1] - l_j)
///       / prod_{i != j}(l[i][k] - l_j + 1)(l[i][k] - l_j)
/// ```
///
/// for raising (`a`) and lowering (`b`) the entry `m[j][k]`.
pub fn gelfand_formula_squared(
    pattern: &GTPattern,
    k: usize,
    j: usize,
    direction: AmplitudeKind,
) -> Result<BigRat> {
    check_move(pattern, k, j)?;
    let valid = match direction {
        AmplitudeKind::Raise => pattern.raised(k, j).is_some(),
        AmplitudeKind::Lower => pattern.lowered(k, j).is_some(),
    };
    if !valid {
        return Ok(BigRat::zero());
    }
    let lj = pattern.l(j, k);
    let s = match direction {
        AmplitudeKind::Raise => 0,
        AmplitudeKind::Lower => 1,
    };
    let num = prod((1..=k + 1).map(|i| pattern.l(i, k + 1) - lj + s))
        * prod((1..k).map(|i| pattern.l(i, k - 1) - lj - 1 + s));
    let den = prod(
        (1..=k)
            .filter(|&i| i != j)
            .map(|i| (pattern.l(i, k) - lj + s) * (pattern.l(i, k) - lj - 1 + s)),
    );
    Ok(-num / den)
}

/// Valid raising moves `(k, j)` out of `pattern`, node by node.
pub fn raising_moves(pattern: &GTPattern) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..pattern.n() {
        let (a, b) = bounds(pattern.n(), pattern.p(), k);
        for j in a..=b {
            if pattern.raised(k, j).is_some() {
                out.push((k, j));
            }
        }
    }
    out
}
