//! Discrete measure spaces and every norm the laboratory evaluates.
//!
//! A [`NormedSpace`] is a finite coordinate space together with one of six
//! norm kinds: weighted Lp, discrete Sobolev, dual, sum, intersection and
//! graph norms. Sum norms are convex minimizations (they equal the
//! K-functional at `t = 1`), dual norms of non-Lp spaces are solved by
//! multi-start ascent over the unit ball; everything else is a closed form.
//!
//! Functionals live in the same coordinate system as vectors and pair
//! through measure weights: `⟨f, x⟩ = Σ wᵢ fᵢ xᵢ`. That identification is
//! fixed once here and used by every dual norm.

mod composite;
pub mod checks;
pub mod dual;

pub use composite::{CompositeNorm, LinOp, NormTerm};
pub use dual::{dual_norm, dual_norm_via_ascent, op_norm_lower, op_norm_upper_lp, DualNormResult,
    DualRoute, OpNormEstimate};

use crate::opt::ascent::AscentOptions;
use crate::opt::newton::NewtonOptions;
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid Lp exponent {0}: exponents must lie in [1, inf]")]
    BadExponent(f64),
    #[error("invalid measure weights: {0}")]
    BadWeights(String),
    #[error("optimizer did not converge: {0}")]
    OptimizerFailed(String),
    #[error("{0}")]
    Unsupported(String),
}

/// A finite measure space: `n` atoms with strictly positive masses.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasureSpace {
    weights: DVector<f64>,
}

impl DiscreteMeasureSpace {
    pub fn new(weights: DVector<f64>) -> Result<Self, SpaceError> {
        if weights.is_empty() {
            return Err(SpaceError::BadWeights("need at least one atom".into()));
        }
        for (i, w) in weights.iter().enumerate() {
            if !(w.is_finite() && *w > 0.0) {
                return Err(SpaceError::BadWeights(format!("weight {i} is {w}")));
            }
        }
        Ok(Self { weights })
    }

    /// Counting measure on `n` atoms.
    pub fn counting(n: usize) -> Self {
        Self::new(DVector::from_element(n, 1.0)).expect("n >= 1")
    }

    /// Uniform measure with mass `h` per atom (grid cells of volume `h`).
    pub fn uniform(n: usize, h: f64) -> Result<Self, SpaceError> {
        Self::new(DVector::from_element(n, h))
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &DVector<f64> {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.sum()
    }
}

/// An Lp exponent in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self, SpaceError> {
        if p.is_nan() || p < 1.0 {
            return Err(SpaceError::BadExponent(p));
        }
        Ok(Self(p))
    }

    pub fn one() -> Self {
        Self(1.0)
    }

    pub fn two() -> Self {
        Self(2.0)
    }

    pub fn infinity() -> Self {
        Self(f64::INFINITY)
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_one(&self) -> bool {
        self.0 == 1.0
    }

    /// Hölder conjugate: `1/p + 1/p' = 1`.
    pub fn conjugate(&self) -> Exponent {
        if self.0 == 1.0 {
            Exponent::infinity()
        } else if self.0.is_infinite() {
            Exponent::one()
        } else {
            Exponent(self.0 / (self.0 - 1.0))
        }
    }
}

/// Face-difference structure behind a discrete Sobolev norm: a linear map
/// from node values to face differences plus face measures.
#[derive(Debug, Clone)]
pub struct GradientStencil {
    pub matrix: DMatrix<f64>,
    pub face_weights: DVector<f64>,
}

/// The six norm kinds.
#[derive(Debug, Clone)]
pub enum NormKind {
    /// `(Σ wᵢ |xᵢ|^p)^(1/p)`; `max |xᵢ|` at `p = ∞`.
    WeightedLp { p: Exponent },
    /// `(‖u‖_p^p + ‖∇_h u‖_p^p)^(1/p)` with the face-difference gradient.
    Sobolev1p { p: Exponent, grad: Arc<GradientStencil> },
    /// `sup { |⟨f, x⟩| : ‖x‖_inner ≤ 1 }` with the weighted pairing.
    DualOf { inner: Arc<NormedSpace>, pairing: DVector<f64> },
    /// `inf { ‖x₀‖_{X0} + ‖x₁‖_{X1} : x₀ + x₁ = x }`.
    Sum { couple: Arc<InterpolationCouple> },
    /// `‖x‖_{X0} + ‖x‖_{X1}` (sum convention; within factor 2 of the max).
    Intersection { couple: Arc<InterpolationCouple> },
    /// `‖x‖_X + ‖Ax‖_X`, the domain norm of a generator.
    Graph { op: Arc<DMatrix<f64>>, inner: Arc<NormedSpace> },
}

/// Options threaded through every norm evaluation that involves an
/// optimizer; carrying them explicitly keeps evaluations deterministic.
#[derive(Debug, Clone)]
pub struct EvalContext {
    pub seed: u64,
    pub ascent: AscentOptions,
    pub newton: NewtonOptions,
    /// Restart count for K-functional solves (first start is deterministic,
    /// the rest are seeded jitters of it).
    pub k_restarts: usize,
}

impl EvalContext {
    pub fn with_seed(seed: u64) -> Self {
        EvalContext {
            seed,
            ascent: AscentOptions::default(),
            newton: NewtonOptions::default(),
            k_restarts: 1,
        }
    }
}

impl Default for EvalContext {
    fn default() -> Self {
        Self::with_seed(0x5eed_cafe)
    }
}

/// A coordinate space with a norm.
#[derive(Debug, Clone)]
pub struct NormedSpace {
    base: DiscreteMeasureSpace,
    kind: NormKind,
}

impl NormedSpace {
    pub fn weighted_lp(base: DiscreteMeasureSpace, p: Exponent) -> Self {
        NormedSpace { base, kind: NormKind::WeightedLp { p } }
    }

    /// Unweighted `ℓp` on `n` coordinates.
    pub fn lp(n: usize, p: f64) -> Result<Self, SpaceError> {
        Ok(Self::weighted_lp(DiscreteMeasureSpace::counting(n), Exponent::new(p)?))
    }

    pub fn sobolev(
        base: DiscreteMeasureSpace,
        p: Exponent,
        grad: Arc<GradientStencil>,
    ) -> Result<Self, SpaceError> {
        if grad.matrix.ncols() != base.len() {
            return Err(SpaceError::DimensionMismatch {
                expected: base.len(),
                got: grad.matrix.ncols(),
            });
        }
        if grad.face_weights.len() != grad.matrix.nrows() {
            return Err(SpaceError::BadWeights("face weights must match face count".into()));
        }
        Ok(NormedSpace { base, kind: NormKind::Sobolev1p { p, grad } })
    }

    pub fn dual_of(inner: NormedSpace, pairing: DVector<f64>) -> Result<Self, SpaceError> {
        if pairing.len() != inner.dim() {
            return Err(SpaceError::DimensionMismatch { expected: inner.dim(), got: pairing.len() });
        }
        let base = inner.base.clone();
        Ok(NormedSpace { base, kind: NormKind::DualOf { inner: Arc::new(inner), pairing } })
    }

    pub fn sum(couple: InterpolationCouple) -> Self {
        let base = couple.x0().base.clone();
        NormedSpace { base, kind: NormKind::Sum { couple: Arc::new(couple) } }
    }

    pub fn intersection(couple: InterpolationCouple) -> Self {
        let base = couple.x0().base.clone();
        NormedSpace { base, kind: NormKind::Intersection { couple: Arc::new(couple) } }
    }

    pub fn graph(op: Arc<DMatrix<f64>>, inner: NormedSpace) -> Result<Self, SpaceError> {
        if op.nrows() != op.ncols() || op.ncols() != inner.dim() {
            return Err(SpaceError::DimensionMismatch { expected: inner.dim(), got: op.ncols() });
        }
        let base = inner.base.clone();
        Ok(NormedSpace { base, kind: NormKind::Graph { op, inner: Arc::new(inner) } })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &DiscreteMeasureSpace {
        &self.base
    }

    pub fn kind(&self) -> &NormKind {
        &self.kind
    }

    pub fn is_weighted_lp(&self) -> Option<Exponent> {
        match &self.kind {
            NormKind::WeightedLp { p } => Some(*p),
            _ => None,
        }
    }

    /// Norm with default evaluation context.
    pub fn norm(&self, x: &DVector<f64>) -> Result<f64, SpaceError> {
        self.norm_with(x, &EvalContext::default())
    }

    pub fn norm_with(&self, x: &DVector<f64>, ctx: &EvalContext) -> Result<f64, SpaceError> {
        if x.len() != self.dim() {
            return Err(SpaceError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        match &self.kind {
            NormKind::WeightedLp { p } => lp_norm(x, *p, self.base.weights()),
            NormKind::Sobolev1p { p, grad } => {
                let gx = &grad.matrix * x;
                Ok(stacked_lp(
                    &[(x, self.base.weights()), (&gx, &grad.face_weights)],
                    *p,
                ))
            }
            NormKind::DualOf { inner, pairing } => {
                Ok(dual::dual_norm(x, inner, pairing, ctx)?.value)
            }
            NormKind::Sum { couple } => {
                Ok(crate::interp::k_functional_with(1.0, x, couple, ctx)
                    .map_err(|e| SpaceError::OptimizerFailed(e.to_string()))?
                    .value)
            }
            NormKind::Intersection { couple } => {
                Ok(couple.x0().norm_with(x, ctx)? + couple.x1().norm_with(x, ctx)?)
            }
            NormKind::Graph { op, inner } => {
                let ax = op.as_ref() * x;
                Ok(inner.norm_with(x, ctx)? + inner.norm_with(&ax, ctx)?)
            }
        }
    }

    /// A subgradient of the norm at `x`, as a coordinate gradient.
    pub fn subgradient(&self, x: &DVector<f64>, ctx: &EvalContext) -> Result<DVector<f64>, SpaceError> {
        if x.len() != self.dim() {
            return Err(SpaceError::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        match &self.kind {
            NormKind::WeightedLp { p } => Ok(lp_subgradient(x, *p, self.base.weights())),
            NormKind::Sobolev1p { p, grad } => {
                let gx = &grad.matrix * x;
                let (gh, gt) = stacked_lp_subgradient(
                    &[(x, self.base.weights()), (&gx, &grad.face_weights)],
                    *p,
                );
                Ok(gh + grad.matrix.transpose() * gt)
            }
            NormKind::DualOf { inner, pairing } => {
                // Danskin: the gradient of f ↦ sup ⟨f, x⟩ is the maximizer,
                // expressed through the pairing weights.
                let res = dual::dual_norm(x, inner, pairing, ctx)?;
                let mut g = res.maximizer.clone();
                for i in 0..g.len() {
                    g[i] *= pairing[i];
                }
                // Orient towards increasing |⟨f, x⟩|.
                let v: f64 = g.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
                if v < 0.0 {
                    g.neg_mut();
                }
                Ok(g)
            }
            NormKind::Sum { couple } => {
                let k = crate::interp::k_functional_with(1.0, x, couple, ctx)
                    .map_err(|e| SpaceError::OptimizerFailed(e.to_string()))?;
                Ok(k.dual)
            }
            NormKind::Intersection { couple } => {
                Ok(couple.x0().subgradient(x, ctx)? + couple.x1().subgradient(x, ctx)?)
            }
            NormKind::Graph { op, inner } => {
                let ax = op.as_ref() * x;
                Ok(inner.subgradient(x, ctx)? + op.transpose() * inner.subgradient(&ax, ctx)?)
            }
        }
    }
}

/// An interpolation couple: two norms over one coordinate space. In finite
/// dimension both spaces embed continuously into the coordinate space, so
/// any such pair is automatically an interpolation couple.
#[derive(Debug, Clone)]
pub struct InterpolationCouple {
    x0: NormedSpace,
    x1: NormedSpace,
}

impl InterpolationCouple {
    pub fn new(x0: NormedSpace, x1: NormedSpace) -> Result<Self, SpaceError> {
        if x0.dim() != x1.dim() {
            return Err(SpaceError::DimensionMismatch { expected: x0.dim(), got: x1.dim() });
        }
        Ok(Self { x0, x1 })
    }

    pub fn x0(&self) -> &NormedSpace {
        &self.x0
    }

    pub fn x1(&self) -> &NormedSpace {
        &self.x1
    }

    pub fn dim(&self) -> usize {
        self.x0.dim()
    }

    /// Swap the two spaces (used by the `K(t) = t K(1/t)` reduction).
    pub fn swapped(&self) -> InterpolationCouple {
        InterpolationCouple { x0: self.x1.clone(), x1: self.x0.clone() }
    }
}

/// `(Σ wᵢ |vᵢ|^p)^(1/p)` for `p < ∞`, `max |vᵢ|` for `p = ∞`.
pub fn lp_norm(v: &DVector<f64>, p: Exponent, w: &DVector<f64>) -> Result<f64, SpaceError> {
    if v.len() != w.len() {
        return Err(SpaceError::DimensionMismatch { expected: w.len(), got: v.len() });
    }
    Ok(lp_norm_unchecked(v.as_slice(), w.as_slice(), p))
}

pub(crate) fn lp_norm_unchecked(v: &[f64], w: &[f64], p: Exponent) -> f64 {
    if p.is_infinite() {
        return v.iter().fold(0.0, |m, x| m.max(x.abs()));
    }
    let pv = p.value();
    let peak = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if peak == 0.0 {
        return 0.0;
    }
    if pv == 1.0 {
        return v.iter().zip(w).map(|(x, wi)| wi * x.abs()).sum();
    }
    if pv == 2.0 {
        let s: f64 = v.iter().zip(w).map(|(x, wi)| wi * x * x).sum();
        return s.sqrt();
    }
    // Scale by the peak so intermediate powers cannot overflow.
    let s: f64 = v.iter().zip(w).map(|(x, wi)| wi * (x.abs() / peak).powf(pv)).sum();
    peak * s.powf(1.0 / pv)
}

/// Lp norm of a few stacked blocks, `(Σ_blocks Σᵢ wᵢ|vᵢ|^p)^(1/p)`.
fn stacked_lp(blocks: &[(&DVector<f64>, &DVector<f64>)], p: Exponent) -> f64 {
    if p.is_infinite() {
        return blocks
            .iter()
            .map(|(v, _)| v.iter().fold(0.0_f64, |m, x| m.max(x.abs())))
            .fold(0.0, f64::max);
    }
    let pv = p.value();
    let peak = blocks
        .iter()
        .map(|(v, _)| v.iter().fold(0.0_f64, |m, x| m.max(x.abs())))
        .fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    let mut s = 0.0;
    for (v, w) in blocks {
        s += v.iter().zip(w.iter()).map(|(x, wi)| wi * (x.abs() / peak).powf(pv)).sum::<f64>();
    }
    peak * s.powf(1.0 / pv)
}

/// Subgradient of the weighted Lp norm as a coordinate gradient.
pub(crate) fn lp_subgradient(v: &DVector<f64>, p: Exponent, w: &DVector<f64>) -> DVector<f64> {
    let n = v.len();
    let mut g = DVector::zeros(n);
    if p.is_infinite() {
        // Pick the first maximal coordinate.
        let mut best = 0.0;
        let mut idx = None;
        for i in 0..n {
            if v[i].abs() > best {
                best = v[i].abs();
                idx = Some(i);
            }
        }
        if let Some(i) = idx {
            g[i] = v[i].signum();
        }
        return g;
    }
    let pv = p.value();
    if pv == 1.0 {
        for i in 0..n {
            g[i] = w[i] * sign0(v[i]);
        }
        return g;
    }
    let norm = lp_norm_unchecked(v.as_slice(), w.as_slice(), p);
    if norm == 0.0 {
        return g;
    }
    for i in 0..n {
        g[i] = w[i] * (v[i].abs() / norm).powf(pv - 1.0) * sign0(v[i]);
    }
    g
}

fn stacked_lp_subgradient(
    blocks: &[(&DVector<f64>, &DVector<f64>)],
    p: Exponent,
) -> (DVector<f64>, DVector<f64>) {
    assert_eq!(blocks.len(), 2);
    if p.is_infinite() {
        // Max over all blocks: indicator at the first overall argmax.
        let mut g0 = DVector::zeros(blocks[0].0.len());
        let mut g1 = DVector::zeros(blocks[1].0.len());
        let m0 = blocks[0].0.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let m1 = blocks[1].0.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if m0 >= m1 && m0 > 0.0 {
            let i = blocks[0].0.iter().position(|x| x.abs() == m0).unwrap();
            g0[i] = blocks[0].0[i].signum();
        } else if m1 > 0.0 {
            let i = blocks[1].0.iter().position(|x| x.abs() == m1).unwrap();
            g1[i] = blocks[1].0[i].signum();
        }
        return (g0, g1);
    }
    let norm = stacked_lp(blocks, p);
    let pv = p.value();
    let grad_block = |v: &DVector<f64>, w: &DVector<f64>| -> DVector<f64> {
        let mut g = DVector::zeros(v.len());
        if norm == 0.0 {
            return g;
        }
        for i in 0..v.len() {
            g[i] = if pv == 1.0 {
                w[i] * sign0(v[i])
            } else {
                w[i] * (v[i].abs() / norm).powf(pv - 1.0) * sign0(v[i])
            };
        }
        g
    };
    (grad_block(blocks[0].0, blocks[0].1), grad_block(blocks[1].0, blocks[1].1))
}

fn sign0(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `⟨f, x⟩ = Σ wᵢ fᵢ xᵢ`, the pairing fixed by this module.
pub fn pairing(f: &DVector<f64>, x: &DVector<f64>, w: &DVector<f64>) -> f64 {
    f.iter().zip(x.iter()).zip(w.iter()).map(|((a, b), c)| a * b * c).sum()
}

/// `inf { ‖x₀‖_{X0} + ‖x₁‖_{X1} : x₀ + x₁ = x }`, i.e. `K(1, x)`.
pub fn sum_norm(x: &DVector<f64>, couple: &InterpolationCouple) -> Result<f64, SpaceError> {
    sum_norm_with(x, couple, &EvalContext::default())
}

pub fn sum_norm_with(
    x: &DVector<f64>,
    couple: &InterpolationCouple,
    ctx: &EvalContext,
) -> Result<f64, SpaceError> {
    Ok(crate::interp::k_functional_with(1.0, x, couple, ctx)
        .map_err(|e| SpaceError::OptimizerFailed(e.to_string()))?
        .value)
}

/// `‖x‖_{X0} + ‖x‖_{X1}` (the sum convention for the intersection norm).
pub fn intersection_norm(x: &DVector<f64>, couple: &InterpolationCouple) -> Result<f64, SpaceError> {
    let ctx = EvalContext::default();
    Ok(couple.x0().norm_with(x, &ctx)? + couple.x1().norm_with(x, &ctx)?)
}

/// `‖x‖_X + ‖Ax‖_X`, the graph norm of the generator domain.
pub fn graph_norm(x: &DVector<f64>, a: &DMatrix<f64>, space: &NormedSpace) -> Result<f64, SpaceError> {
    if a.nrows() != a.ncols() || a.ncols() != space.dim() {
        return Err(SpaceError::DimensionMismatch { expected: space.dim(), got: a.ncols() });
    }
    let ax = a * x;
    Ok(space.norm(x)? + space.norm(&ax)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(data: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(data)
    }

    #[test]
    fn lp_norm_pythagorean() {
        let n = lp_norm(&v(&[3.0, 4.0]), Exponent::two(), &v(&[1.0, 1.0])).unwrap();
        assert!((n - 5.0).abs() < 1e-15);
    }

    #[test]
    fn lp_norm_max() {
        let n = lp_norm(&v(&[3.0, 4.0]), Exponent::infinity(), &v(&[1.0, 1.0])).unwrap();
        assert!((n - 4.0).abs() < 1e-15);
    }

    #[test]
    fn lp_norm_weighted_cubic() {
        // (2·1 + 2·1)^(1/3), directly.
        let n = lp_norm(&v(&[1.0, 1.0]), Exponent::new(3.0).unwrap(), &v(&[2.0, 2.0])).unwrap();
        let oracle = 4.0_f64.powf(1.0 / 3.0);
        assert!((n - oracle).abs() < 1e-14, "got {n}, oracle {oracle}");
    }

    #[test]
    fn lp_norm_dimension_mismatch() {
        assert!(lp_norm(&v(&[1.0]), Exponent::two(), &v(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn exponent_rejects_sub_one() {
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
    }

    #[test]
    fn conjugate_pairs() {
        assert_eq!(Exponent::one().conjugate().value(), f64::INFINITY);
        assert_eq!(Exponent::infinity().conjugate().value(), 1.0);
        let p = Exponent::new(1.5).unwrap().conjugate();
        assert!((p.value() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn intersection_norm_direct() {
        let couple = InterpolationCouple::new(
            NormedSpace::lp(2, 1.0).unwrap(),
            NormedSpace::lp(2, f64::INFINITY).unwrap(),
        )
        .unwrap();
        let n = intersection_norm(&v(&[3.0, 1.0]), &couple).unwrap();
        assert!((n - 7.0).abs() < 1e-15);
        assert_eq!(intersection_norm(&v(&[0.0, 0.0]), &couple).unwrap(), 0.0);
    }

    #[test]
    fn intersection_equal_spaces_doubles() {
        let couple = InterpolationCouple::new(
            NormedSpace::lp(2, 2.0).unwrap(),
            NormedSpace::lp(2, 2.0).unwrap(),
        )
        .unwrap();
        let x = v(&[3.0, 4.0]);
        assert!((intersection_norm(&x, &couple).unwrap() - 10.0).abs() < 1e-14);
    }

    #[test]
    fn graph_norm_examples() {
        let space = NormedSpace::lp(2, 1.0).unwrap();
        let x = v(&[1.0, 1.0]);
        let zero = DMatrix::zeros(2, 2);
        assert!((graph_norm(&x, &zero, &space).unwrap() - 2.0).abs() < 1e-15);
        let id = DMatrix::identity(2, 2);
        assert!((graph_norm(&x, &id, &space).unwrap() - 4.0).abs() < 1e-15);
        let d = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert!((graph_norm(&x, &d, &space).unwrap() - 7.0).abs() < 1e-15);
    }

    #[test]
    fn pairing_uses_weights() {
        let f = v(&[1.0, 2.0]);
        let x = v(&[3.0, 4.0]);
        let w = v(&[2.0, 0.5]);
        assert!((pairing(&f, &x, &w) - (2.0 * 3.0 + 0.5 * 8.0)).abs() < 1e-15);
    }

    #[test]
    fn measure_rejects_bad_weights() {
        assert!(DiscreteMeasureSpace::new(v(&[1.0, 0.0])).is_err());
        assert!(DiscreteMeasureSpace::new(v(&[1.0, -2.0])).is_err());
        assert!(DiscreteMeasureSpace::new(v(&[1.0, f64::INFINITY])).is_err());
    }
}
