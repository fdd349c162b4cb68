//! Equivariant localization on the quiver moduli space.
//!
//! At a fixed point the Zariski tangent space is the kernel of the
//! linearised F-terms modulo the infinitesimal gauge action. Both maps
//! preserve the torus weight, so everything is computed one weight sector at
//! a time.
//!
//! Conventions, all checked against the closed-form amplitudes:
//!
//! * Fixed points are deformed inside the quiver with framing pairs at every
//!   node (see [`build_quiver_all_framings`]); the extra framing arrows
//!   vanish at the fixed point but contribute tangent directions.
//! * The framing word `C_p^lambda R_p S_p` is left out of the linearisation.
//!
//! Both choices are switches on [`LocalizationConfig`].
//! * Weights with vanishing `epsilon` coefficient are zero weights at
//!   `h = 0`. They are not multiplied into the Euler class; instead the
//!   class picks up `(-1)^(floor(z/2))` for `z` zero directions, and a sign
//!   `(-1)^r` where `r` is the rank of the gauge action on those sectors.
//!
//! Incidence loci between a pattern and the pattern with one more atom are
//! described by a map `tau` from the larger representation to the smaller
//! one that intertwines the arrows. It is the identity on shared atoms, and
//! the new atom goes to zero.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gt::{fixed_point_for, FixedPoint, GTPattern};
use crate::matrix::RationalMatrix;
use crate::quiver::{
    build_quiver, build_quiver_all_framings, ArrowId, EquivariantParams, LinearForm, Vertex,
};
use crate::rational::{self, int, BigRat};

/// Choices entering the tangent complex.
///
/// The default attaches framing pairs at every node and leaves the framing
/// word out of the linearised F-terms; it reproduces the closed-form Euler
/// classes and amplitudes at every regular fixed point. [`literal`] is the
/// opposite choice on both counts.
///
/// [`literal`]: LocalizationConfig::literal
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalizationConfig {
    /// Deform the fixed point inside the quiver with framing pairs at every
    /// node rather than only at `p`.
    pub all_framings: bool,
    /// Include the framing word of the superpotential in the linearised
    /// F-terms.
    pub linearize_framing_term: bool,
}

impl Default for LocalizationConfig {
    fn default() -> Self {
        LocalizationConfig {
            all_framings: true,
            linearize_framing_term: false,
        }
    }
}

impl LocalizationConfig {
    /// Single framing pair, full superpotential linearised.
    pub fn literal() -> Self {
        LocalizationConfig {
            all_framings: false,
            linearize_framing_term: true,
        }
    }
}

/// Dimensions of a weight-graded vector space; only nonzero dimensions are
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pub dims: BTreeMap<LinearForm, i64>,
}

impl GradedSpace {
    pub fn total(&self) -> i64 {
        self.dims.values().sum()
    }

    pub fn get(&self, w: &LinearForm) -> i64 {
        self.dims.get(w).copied().unwrap_or(0)
    }
}

/// `sign * (-1)^floor(zero_count / 2) * nonzero_product`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerClass {
    pub sign: i64,
    pub zero_count: i64,
    pub nonzero_product: BigRat,
}

impl EulerClass {
    pub fn value(&self) -> BigRat {
        rational::sign_pow(self.zero_count.div_euclid(2)) * int(self.sign) * &self.nonzero_product
    }

    /// [`value`](Self::value) with every zero weight counted as `epsilon`,
    /// which keeps ratios of Euler classes homogeneous in `epsilon`.
    pub fn homogeneous_value(&self, params: &EquivariantParams) -> BigRat {
        self.value() * rational::pow(&params.epsilon, self.zero_count)
    }
}

/// Rank data of one weight sector of the tangent complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub weight: LinearForm,
    pub variables: usize,
    pub relation_rank: usize,
    pub gauge_rank: usize,
}

impl Sector {
    pub fn tangent_dim(&self) -> i64 {
        self.variables as i64 - self.relation_rank as i64 - self.gauge_rank as i64
    }
}

type SparseRow = BTreeMap<usize, BigRat>;

/// Linear data of the tangent complex at a fixed point.
#[derive(Clone, Debug)]
pub struct TangentComplex {
    /// One deformation variable per matrix entry of every arrow.
    pub variables: Vec<(ArrowId, usize, usize, LinearForm)>,
    offsets: BTreeMap<ArrowId, usize>,
    /// Linearised F-terms, each with the weight of the variables it involves.
    pub relations: Vec<(LinearForm, SparseRow)>,
    /// Images of the elementary gauge generators `E_ij` at each node.
    pub gauge: Vec<(LinearForm, SparseRow)>,
}

impl TangentComplex {
    fn var(&self, arrow: ArrowId, row: usize, col: usize, fp: &FixedPoint) -> usize {
        let cols = fp.dim(fp.quiver.arrow(arrow).source);
        self.offsets[&arrow] + row * cols + col
    }
}

/// Fixed point of `pattern` on the quiver selected by `config`.
pub fn localization_fixed_point(
    pattern: &GTPattern,
    config: &LocalizationConfig,
) -> Result<FixedPoint> {
    let (n, p, lambda) = (pattern.n(), pattern.p(), pattern.lambda());
    let quiver = if config.all_framings {
        build_quiver_all_framings(n, p, lambda)?
    } else {
        build_quiver(n, p, lambda)?
    };
    Ok(fixed_point_for(&quiver, pattern))
}

/// `fp` itself when it already lives on the configured quiver, otherwise the
/// same pattern rebuilt on it.
fn on_configured_quiver<'a>(
    fp: &'a FixedPoint,
    config: &LocalizationConfig,
) -> Result<Cow<'a, FixedPoint>> {
    if fp.quiver.all_framings == config.all_framings {
        Ok(Cow::Borrowed(fp))
    } else {
        Ok(Cow::Owned(localization_fixed_point(&fp.pattern, config)?))
    }
}

fn word_product(fp: &FixedPoint, word: &[ArrowId], dim: usize) -> RationalMatrix {
    word.iter().fold(RationalMatrix::identity(dim), |acc, id| {
        acc.matmul(fp.arrow(*id))
    })
}

/// Tangent complex of `fp` on its own quiver; only
/// [`LocalizationConfig::linearize_framing_term`] is consulted here.
pub fn tangent_complex(fp: &FixedPoint, config: &LocalizationConfig) -> TangentComplex {
    let quiver = &fp.quiver;
    let mut variables = Vec::new();
    let mut offsets = BTreeMap::new();
    for arrow in &quiver.arrows {
        offsets.insert(arrow.id, variables.len());
        for r in 0..fp.dim(arrow.target) {
            for c in 0..fp.dim(arrow.source) {
                let w =
                    &(&fp.weight(arrow.target, r) - &fp.weight(arrow.source, c)) - &arrow.weight;
                variables.push((arrow.id, r, c, w));
            }
        }
    }
    let mut tc = TangentComplex {
        variables,
        offsets,
        relations: Vec::new(),
        gauge: Vec::new(),
    };

    // d(dW/dJ): product rule over the letters of the cyclic remainder
    let mut rows: BTreeMap<(ArrowId, usize, usize), SparseRow> = BTreeMap::new();
    for term in &quiver.superpotential {
        if term.is_framing() && !config.linearize_framing_term {
            continue;
        }
        let sign = int(term.sign);
        for (pos, &j) in term.word.iter().enumerate() {
            let sj = quiver.arrow(j).source;
            let mut rest: Vec<ArrowId> = term.word[pos + 1..].to_vec();
            rest.extend_from_slice(&term.word[..pos]);
            for u in 0..rest.len() {
                let x = rest[u];
                let sx = quiver.arrow(x).source;
                let before = word_product(fp, &rest[..u], fp.dim(sj));
                let after = word_product(fp, &rest[u + 1..], fp.dim(sx));
                for r in 0..before.rows() {
                    for a in 0..before.cols() {
                        let bv = before.get(r, a);
                        if bv.is_zero() {
                            continue;
                        }
                        for b in 0..after.rows() {
                            for c in 0..after.cols() {
                                let av = after.get(b, c);
                                if av.is_zero() {
                                    continue;
                                }
                                let idx = tc.var(x, a, b, fp);
                                let entry = rows.entry((j, r, c)).or_default();
                                *entry.entry(idx).or_insert_with(BigRat::zero) += &sign * bv * av;
                            }
                        }
                    }
                }
            }
        }
    }
    for ((j, r, c), row) in rows {
        let arrow = quiver.arrow(j);
        let w = &(&fp.weight(arrow.source, r) - &fp.weight(arrow.target, c)) + &arrow.weight;
        let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            tc.relations.push((w, row));
        }
    }

    // gamma = E_ij at node a acts by q_I -> gamma_t q_I - q_I gamma_s
    for a in 1..quiver.n {
        let node = Vertex::Gauge(a);
        for i in 0..fp.dim(node) {
            for j in 0..fp.dim(node) {
                let w = &fp.weight(node, i) - &fp.weight(node, j);
                let mut vec = SparseRow::new();
                for arrow in &quiver.arrows {
                    let q = fp.arrow(arrow.id);
                    if arrow.target == node {
                        for c in 0..q.cols() {
                            let v = q.get(j, c);
                            if !v.is_zero() {
                                *vec.entry(tc.var(arrow.id, i, c, fp))
                                    .or_insert_with(BigRat::zero) += v;
                            }
                        }
                    }
                    if arrow.source == node {
                        for r in 0..q.rows() {
                            let v = q.get(r, i);
                            if !v.is_zero() {
                                *vec.entry(tc.var(arrow.id, r, j, fp))
                                    .or_insert_with(BigRat::zero) -= v;
                            }
                        }
                    }
                }
                vec.retain(|_, v| !v.is_zero());
                tc.gauge.push((w, vec));
            }
        }
    }
    tc
}

/// Rank of the rows restricted to the listed columns.
fn sector_rank(rows: &[&SparseRow], cols: &[usize]) -> usize {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let local: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let m = RationalMatrix::from_fn(rows.len(), cols.len(), |_, _| BigRat::zero());
    let mut m = m;
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter() {
            let lc = *local
                .get(c)
                .expect("relation mixes torus weights; the fixed point is not homogeneous");
            m.set(r, lc, v.clone());
        }
    }
    m.rank()
}

fn group_by_weight<'a>(
    items: impl Iterator<Item = (&'a LinearForm, &'a SparseRow)>,
) -> BTreeMap<LinearForm, Vec<&'a SparseRow>> {
    let mut out: BTreeMap<LinearForm, Vec<&SparseRow>> = BTreeMap::new();
    for (w, row) in items {
        out.entry(w.clone()).or_default().push(row);
    }
    out
}

/// Rank data of every weight sector that carries variables or gauge
/// generators.
pub fn tangent_sectors(fp: &FixedPoint, config: &LocalizationConfig) -> Result<Vec<Sector>> {
    let fp = on_configured_quiver(fp, config)?;
    let tc = tangent_complex(&fp, config);
    let mut vars: BTreeMap<LinearForm, Vec<usize>> = BTreeMap::new();
    for (idx, (_, _, _, w)) in tc.variables.iter().enumerate() {
        vars.entry(w.clone()).or_default().push(idx);
    }
    let rel = group_by_weight(tc.relations.iter().map(|(w, r)| (w, r)));
    let gauge = group_by_weight(tc.gauge.iter().map(|(w, r)| (w, r)));
    let mut weights: Vec<LinearForm> = vars.keys().cloned().collect();
    weights.extend(gauge.keys().cloned());
    weights.sort();
    weights.dedup();

    let empty_cols = Vec::new();
    let empty_rows = Vec::new();
    let mut sectors = Vec::new();
    let mut stabiliser = 0usize;
    for w in weights {
        let cols = vars.get(&w).unwrap_or(&empty_cols);
        let g = gauge.get(&w).unwrap_or(&empty_rows);
        let gauge_rank = sector_rank(g, cols);
        stabiliser += g.len() - gauge_rank;
        sectors.push(Sector {
            relation_rank: sector_rank(rel.get(&w).unwrap_or(&empty_rows), cols),
            variables: cols.len(),
            gauge_rank,
            weight: w,
        });
    }
    if stabiliser > 0 {
        return Err(Error::StabilityViolation(format!(
            "gauge action has a {stabiliser}-dimensional stabiliser"
        )));
    }
    Ok(sectors)
}

/// Weight decomposition of the Zariski tangent space.
pub fn tangent_graded(fp: &FixedPoint, config: &LocalizationConfig) -> Result<GradedSpace> {
    let mut dims = BTreeMap::new();
    for s in tangent_sectors(fp, config)? {
        let d = s.tangent_dim();
        if d != 0 {
            dims.insert(s.weight.clone(), d);
        }
    }
    Ok(GradedSpace { dims })
}

fn assemble(
    parts: impl Iterator<Item = (LinearForm, i64)>,
    gauge_zero_rank: usize,
    params: &EquivariantParams,
) -> EulerClass {
    let mut zero_count = 0;
    let mut product = rational::one();
    for (w, d) in parts {
        if w.c_eps.is_zero() {
            zero_count += d;
        } else if d != 0 {
            product *= rational::pow(&(&w.c_eps * &params.epsilon), d);
        }
    }
    EulerClass {
        sign: if gauge_zero_rank.is_multiple_of(2) {
            1
        } else {
            -1
        },
        zero_count,
        nonzero_product: product,
    }
}

/// Regularised Euler class of the tangent space at a fixed point.
pub fn euler_class(
    fp: &FixedPoint,
    params: &EquivariantParams,
    config: &LocalizationConfig,
) -> Result<EulerClass> {
    params.require_h_zero("euler_class")?;
    let sectors = tangent_sectors(fp, config)?;
    let g0 = zero_gauge_rank(&sectors);
    Ok(assemble(
        sectors.iter().map(|s| (s.weight.clone(), s.tangent_dim())),
        g0,
        params,
    ))
}

fn zero_gauge_rank(sectors: &[Sector]) -> usize {
    sectors
        .iter()
        .filter(|s| s.weight.c_eps.is_zero())
        .map(|s| s.gauge_rank)
        .sum()
}

/// Identity on shared atoms from the larger representation to the smaller.
fn projection(small: &FixedPoint, large: &FixedPoint, v: Vertex) -> RationalMatrix {
    RationalMatrix::from_fn(small.dim(v), large.dim(v), |r, c| {
        if small.coordinate(v, r) == large.coordinate(v, c) {
            rational::one()
        } else {
            BigRat::zero()
        }
    })
}

/// Regularised Euler class of the incidence locus between `fp` and
/// `fp_plus`, which must carry exactly one more atom.
pub fn incidence_euler(
    fp: &FixedPoint,
    fp_plus: &FixedPoint,
    params: &EquivariantParams,
    config: &LocalizationConfig,
) -> Result<EulerClass> {
    params.require_h_zero("incidence_euler")?;
    let fp = on_configured_quiver(fp, config)?;
    let fp_plus = on_configured_quiver(fp_plus, config)?;
    let (fp, fp_plus) = (fp.as_ref(), fp_plus.as_ref());
    if fp.quiver != fp_plus.quiver || fp.pattern.added_atom(&fp_plus.pattern).is_none() {
        return Err(Error::NotAdjacent(format!(
            "{:?} -> {:?}",
            fp.pattern.free_entries(),
            fp_plus.pattern.free_entries()
        )));
    }
    let quiver = &fp.quiver;
    let (small, large) = (fp, fp_plus);
    let tc_small = tangent_complex(small, config);
    let tc_large = tangent_complex(large, config);
    let n_small = tc_small.variables.len();
    let n_large = tc_large.variables.len();

    let mut vertices: Vec<Vertex> = (1..quiver.n).map(Vertex::Gauge).collect();
    vertices.push(Vertex::Framing);
    let tau: BTreeMap<Vertex, RationalMatrix> = vertices
        .iter()
        .map(|&v| (v, projection(small, large, v)))
        .collect();
    for arrow in &quiver.arrows {
        let lhs = small.arrow(arrow.id).matmul(&tau[&arrow.source]);
        let rhs = tau[&arrow.target].matmul(large.arrow(arrow.id));
        if lhs != rhs {
            return Err(Error::NotAdjacent(format!(
                "projection does not intertwine {}",
                arrow.id
            )));
        }
    }

    // variable layout: small deformations, large deformations, tau entries
    let mut weights: Vec<LinearForm> = tc_small.variables.iter().map(|v| v.3.clone()).collect();
    weights.extend(tc_large.variables.iter().map(|v| v.3.clone()));
    let mut tau_offset = BTreeMap::new();
    for a in 1..quiver.n {
        let v = Vertex::Gauge(a);
        tau_offset.insert(a, weights.len());
        for r in 0..small.dim(v) {
            for c in 0..large.dim(v) {
                weights.push(&small.weight(v, r) - &large.weight(v, c));
            }
        }
    }
    let tau_var =
        |a: usize, r: usize, c: usize| tau_offset[&a] + r * large.dim(Vertex::Gauge(a)) + c;
    let is_tau = |idx: usize| idx >= n_small + n_large;

    let mut eqs: Vec<(LinearForm, SparseRow)> = tc_small.relations.clone();
    for (w, row) in &tc_large.relations {
        eqs.push((
            w.clone(),
            row.iter().map(|(k, v)| (k + n_small, v.clone())).collect(),
        ));
    }
    // (dq_small tau + q_small dtau_s - dtau_t q_large - tau dq_large) = 0
    for arrow in &quiver.arrows {
        let (s, t) = (arrow.source, arrow.target);
        let q_small = small.arrow(arrow.id);
        let q_large = large.arrow(arrow.id);
        for r in 0..small.dim(t) {
            for c in 0..large.dim(s) {
                let mut e = SparseRow::new();
                let mut add = |k: usize, v: BigRat| {
                    *e.entry(k).or_insert_with(BigRat::zero) += v;
                };
                for i in 0..small.dim(s) {
                    let v = tau[&s].get(i, c);
                    if !v.is_zero() {
                        add(tc_small.var(arrow.id, r, i, small), v.clone());
                    }
                }
                if let Vertex::Gauge(a) = s {
                    for j in 0..small.dim(s) {
                        let v = q_small.get(r, j);
                        if !v.is_zero() {
                            add(tau_var(a, j, c), v.clone());
                        }
                    }
                }
                if let Vertex::Gauge(a) = t {
                    for i in 0..large.dim(t) {
                        let v = q_large.get(i, c);
                        if !v.is_zero() {
                            add(tau_var(a, r, i), -v.clone());
                        }
                    }
                }
                for j in 0..large.dim(t) {
                    let v = tau[&t].get(r, j);
                    if !v.is_zero() {
                        add(n_small + tc_large.var(arrow.id, j, c, large), -v.clone());
                    }
                }
                e.retain(|_, v| !v.is_zero());
                if !e.is_empty() {
                    let w = &(&small.weight(t, r) - &large.weight(s, c)) - &arrow.weight;
                    eqs.push((w, e));
                }
            }
        }
    }

    let mut vars: BTreeMap<LinearForm, Vec<usize>> = BTreeMap::new();
    for (idx, w) in weights.iter().enumerate() {
        vars.entry(w.clone()).or_default().push(idx);
    }
    let eq_groups = group_by_weight(eqs.iter().map(|(w, r)| (w, r)));
    let g_small = group_by_weight(tc_small.gauge.iter().map(|(w, r)| (w, r)));
    let g_large = group_by_weight(tc_large.gauge.iter().map(|(w, r)| (w, r)));
    let mut all: Vec<LinearForm> = vars.keys().cloned().collect();
    all.extend(g_small.keys().cloned());
    all.extend(g_large.keys().cloned());
    all.sort();
    all.dedup();

    let empty_cols = Vec::new();
    let empty_rows = Vec::new();
    let mut parts = Vec::new();
    let mut gauge_zero_rank = 0;
    for w in all {
        let cols = vars.get(&w).unwrap_or(&empty_cols);
        let rows = eq_groups.get(&w).unwrap_or(&empty_rows);
        let tau_cols: Vec<usize> = cols.iter().copied().filter(|&i| is_tau(i)).collect();
        let tau_rows: Vec<SparseRow> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|(k, _)| is_tau(**k))
                    .map(|(k, v)| (*k, v.clone()))
                    .collect()
            })
            .collect();
        let tau_refs: Vec<&SparseRow> = tau_rows.iter().collect();
        let kernel = cols.len() as i64 - sector_rank(rows, cols) as i64;
        let tau_kernel = tau_cols.len() as i64 - sector_rank(&tau_refs, &tau_cols) as i64;
        let projected = kernel - tau_kernel;

        let cols_small: Vec<usize> = cols.iter().copied().filter(|&i| i < n_small).collect();
        let cols_large: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&i| i >= n_small && i < n_small + n_large)
            .map(|i| i - n_small)
            .collect();
        let rg_small = sector_rank(g_small.get(&w).unwrap_or(&empty_rows), &cols_small);
        let rg_large = sector_rank(g_large.get(&w).unwrap_or(&empty_rows), &cols_large);
        if w.c_eps.is_zero() {
            gauge_zero_rank += rg_small;
        }
        parts.push((w, projected - rg_small as i64 - rg_large as i64));
    }
    Ok(assemble(parts.into_iter(), gauge_zero_rank, params))
}

/// Raising and lowering amplitudes `(E, F)` for the move from `fp` to
/// `fp_plus` as ratios of Euler classes:
/// `E = Eul(fp) / Eul(incidence)` and `F = Eul(fp_plus) / Eul(incidence)`,
/// each Euler class taken in its homogeneous form.
pub fn amplitudes_via_localization(
    fp: &FixedPoint,
    fp_plus: &FixedPoint,
    params: &EquivariantParams,
    config: &LocalizationConfig,
) -> Result<(BigRat, BigRat)> {
    let inc = incidence_euler(fp, fp_plus, params, config)?.homogeneous_value(params);
    let lower = euler_class(fp, params, config)?.homogeneous_value(params);
    let upper = euler_class(fp_plus, params, config)?.homogeneous_value(params);
    Ok((lower / &inc, upper / inc))
}
