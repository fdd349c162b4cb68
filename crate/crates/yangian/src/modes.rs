//! Mode operators `e^(a)_m`, `f^(a)_m` and `psi^(a)_m` on the pattern basis.
//!
//! With add pole `x` and remove pole `y` of a move,
//! `e_m |L> = E x^m |L + box>` and `f_m |L> = F y^m |L - box>`. The
//! `psi` modes are the expansion coefficients of the charge function,
//! `Psi(z) = Psi(infinity) + sum_m psi_m z^(-m-1)`, which are
//! `sum_poles res * pole^m` because every pole is simple.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::amplitudes::{amplitude_e, amplitude_f, psi_closed_form};
use crate::error::Result;
use crate::gt::{add_pole, enumerate_patterns, remove_pole, GTPattern};
use crate::matrix::RationalMatrix;
use crate::quiver::EquivariantParams;
use crate::rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    E,
    F,
    Psi,
}

impl GeneratorKind {
    pub fn label(&self) -> &'static str {
        match self {
            GeneratorKind::E => "e",
            GeneratorKind::F => "f",
            GeneratorKind::Psi => "psi",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeOperator {
    pub kind: GeneratorKind,
    pub node: usize,
    pub mode: usize,
    pub matrix: RationalMatrix,
}

/// All mode operators of one representation up to a cutoff.
///
/// `psi` modes are stored up to `2 * cutoff + 1` so that commutators of
/// `e_m` and `f_k` with `m, k <= cutoff` can be compared.
#[derive(Clone, Debug)]
pub struct ModeAlgebra {
    pub n: usize,
    pub p: usize,
    pub lambda: usize,
    pub params: EquivariantParams,
    pub cutoff: usize,
    pub states: Vec<GTPattern>,
    e: Vec<Vec<RationalMatrix>>,
    f: Vec<Vec<RationalMatrix>>,
    psi: Vec<Vec<RationalMatrix>>,
}

impl ModeAlgebra {
    pub fn build(
        n: usize,
        p: usize,
        lambda: usize,
        params: &EquivariantParams,
        cutoff: usize,
    ) -> Result<Self> {
        params.require_h_zero("mode operators")?;
        let states = enumerate_patterns(n, p, lambda)?;
        let index: BTreeMap<Vec<i64>, usize> = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.free_entries(), i))
            .collect();
        let dim = states.len();
        let psi_top = 2 * cutoff + 1;
        let blank = |modes: usize| -> Vec<Vec<RationalMatrix>> {
            (1..n)
                .map(|_| {
                    (0..=modes)
                        .map(|_| RationalMatrix::zeros(dim, dim))
                        .collect()
                })
                .collect()
        };
        let mut e = blank(cutoff);
        let mut f = blank(cutoff);
        let mut psi = blank(psi_top);

        for (s, state) in states.iter().enumerate() {
            for k in 1..n {
                let (a, b) = state.bounds(k);
                for j in a..=b {
                    if let Some(t) = state.raised(k, j) {
                        let amp = amplitude_e(state, k, j, params)?.value;
                        let x = add_pole(state, k, j, params);
                        let target = index[&t.free_entries()];
                        for (m, op) in e[k - 1].iter_mut().enumerate() {
                            op.set(target, s, &amp * rational::pow(&x, m as i64));
                        }
                    }
                    if let Some(t) = state.lowered(k, j) {
                        let amp = amplitude_f(state, k, j, params)?.value;
                        let y = remove_pole(state, k, j, params);
                        let target = index[&t.free_entries()];
                        for (m, op) in f[k - 1].iter_mut().enumerate() {
                            op.set(target, s, &amp * rational::pow(&y, m as i64));
                        }
                    }
                }
                let charge = psi_closed_form(state, k, params)?.value;
                for pole in charge.poles() {
                    let res = charge.residue_simple(&pole)?;
                    for (m, op) in psi[k - 1].iter_mut().enumerate() {
                        let v = op.get(s, s) + &res * rational::pow(&pole, m as i64);
                        op.set(s, s, v);
                    }
                }
            }
        }
        Ok(ModeAlgebra {
            n,
            p,
            lambda,
            params: params.clone(),
            cutoff,
            states,
            e,
            f,
            psi,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn e(&self, node: usize, mode: usize) -> &RationalMatrix {
        &self.e[node - 1][mode]
    }

    pub fn f(&self, node: usize, mode: usize) -> &RationalMatrix {
        &self.f[node - 1][mode]
    }

    /// Expansion coefficient of `z^(-mode-1)` in `Psi^(node)(z)`.
    pub fn psi(&self, node: usize, mode: usize) -> &RationalMatrix {
        &self.psi[node - 1][mode]
    }

    /// Highest `psi` mode available.
    pub fn psi_cutoff(&self) -> usize {
        2 * self.cutoff + 1
    }

    /// Operators of every kind, node and mode `0..=cutoff`.
    pub fn operators(&self) -> Vec<ModeOperator> {
        let mut out = Vec::new();
        for node in 1..self.n {
            for mode in 0..=self.cutoff {
                for (kind, m) in [
                    (GeneratorKind::E, self.e(node, mode)),
                    (GeneratorKind::F, self.f(node, mode)),
                    (GeneratorKind::Psi, self.psi(node, mode)),
                ] {
                    out.push(ModeOperator {
                        kind,
                        node,
                        mode,
                        matrix: m.clone(),
                    });
                }
            }
        }
        out
    }
}

/// Mode operators with modes `0..=cutoff` for every node.
pub fn build_mode_operators(
    n: usize,
    p: usize,
    lambda: usize,
    params: &EquivariantParams,
    cutoff: usize,
) -> Result<Vec<ModeOperator>> {
    Ok(ModeAlgebra::build(n, p, lambda, params, cutoff)?.operators())
}
