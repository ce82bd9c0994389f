//! Lowering of norms to sums of weighted-Lp terms over linear images.
//!
//! Weighted Lp, Sobolev, graph and intersection norms all decompose as
//! `Σ_k scale_k · ‖B_k x‖_{p_k, w_k}`. The convex solvers work on this
//! representation: dual-ball projections and smoothed gradients of each
//! piece are closed forms there.  Sum and dual norms are *not* of this
//! shape (they are optimizations themselves) and report as non-lowerable.

use super::{Exponent, NormKind, NormedSpace};
use crate::linalg;
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;

/// A linear map applied inside a norm term.
#[derive(Debug, Clone)]
pub enum LinOp {
    Identity { dim: usize },
    Dense(Arc<DMatrix<f64>>),
}

impl LinOp {
    pub fn rows(&self) -> usize {
        match self {
            LinOp::Identity { dim } => *dim,
            LinOp::Dense(m) => m.nrows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            LinOp::Identity { dim } => *dim,
            LinOp::Dense(m) => m.ncols(),
        }
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        match self {
            LinOp::Identity { .. } => x.clone(),
            LinOp::Dense(m) => m.as_ref() * x,
        }
    }

    pub fn apply_transpose(&self, y: &DVector<f64>) -> DVector<f64> {
        match self {
            LinOp::Identity { .. } => y.clone(),
            LinOp::Dense(m) => m.transpose() * y,
        }
    }

    /// Upper bound for the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        match self {
            LinOp::Identity { .. } => 1.0,
            LinOp::Dense(m) => linalg::spectral_norm_upper(m),
        }
    }

    /// Right-compose with a dense matrix: `self ∘ A`.
    fn compose(&self, a: &Arc<DMatrix<f64>>) -> LinOp {
        match self {
            LinOp::Identity { .. } => LinOp::Dense(a.clone()),
            LinOp::Dense(m) => LinOp::Dense(Arc::new(m.as_ref() * a.as_ref())),
        }
    }
}

/// One piece `scale · ‖op x‖_{p, weights}` of a lowered norm.
#[derive(Debug, Clone)]
pub struct NormTerm {
    pub op: LinOp,
    pub p: Exponent,
    pub weights: DVector<f64>,
    pub scale: f64,
    /// Number of leading rows of `op` forming an identity block; nonzero
    /// terms witness `N(x) ≥ scale·‖x‖_{p, head-weights}`, which localizes
    /// minimizers for the duality-gap certificates.
    pub id_rows: usize,
}

/// A norm written as `Σ_k scale_k ‖B_k x‖_{p_k, w_k}`.
#[derive(Debug, Clone)]
pub struct CompositeNorm {
    pub dim: usize,
    pub terms: Vec<NormTerm>,
}

impl CompositeNorm {
    /// Lower a normed space; `None` when the norm is itself an optimization
    /// (sum and dual kinds).
    pub fn lower(space: &NormedSpace) -> Option<CompositeNorm> {
        let dim = space.dim();
        let terms = lower_kind(space)?;
        Some(CompositeNorm { dim, terms })
    }

    pub fn eval(&self, x: &DVector<f64>) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let u = t.op.apply(x);
                t.scale * super::lp_norm_unchecked(u.as_slice(), t.weights.as_slice(), t.p)
            })
            .sum()
    }

    /// Constant `c > 0` with `N(x) ≥ c ‖x‖₂`, from an identity-headed term.
    /// Used to localize minimizers: `‖x*‖₂ ≤ N(x*) / c`.
    pub fn l2_lower_bound(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for t in &self.terms {
            if t.id_rows != self.dim || t.scale <= 0.0 {
                continue;
            }
            let head = t.weights.rows(0, self.dim);
            let c = lp_vs_l2_lower(&head.into_owned(), t.p, self.dim) * t.scale;
            best = Some(best.map_or(c, |b: f64| b.max(c)));
        }
        best
    }
}

/// `c` with `‖x‖_{p,w} ≥ c ‖x‖₂` on `R^n`.
fn lp_vs_l2_lower(w: &DVector<f64>, p: Exponent, n: usize) -> f64 {
    if p.is_infinite() {
        return 1.0 / (n as f64).sqrt();
    }
    let pv = p.value();
    let wmin = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let wfac = wmin.powf(1.0 / pv);
    if pv <= 2.0 {
        wfac
    } else {
        wfac * (n as f64).powf(1.0 / pv - 0.5)
    }
}

fn lower_kind(space: &NormedSpace) -> Option<Vec<NormTerm>> {
    let dim = space.dim();
    match space.kind() {
        NormKind::WeightedLp { p } => Some(vec![NormTerm {
            op: LinOp::Identity { dim },
            p: *p,
            weights: space.base().weights().clone(),
            scale: 1.0,
            id_rows: dim,
        }]),
        NormKind::Sobolev1p { p, grad } => {
            // One stacked block [I; G] with cell weights on top of face weights.
            let faces = grad.matrix.nrows();
            let mut stacked = DMatrix::zeros(dim + faces, dim);
            stacked.view_mut((0, 0), (dim, dim)).fill_with_identity();
            stacked.view_mut((dim, 0), (faces, dim)).copy_from(&grad.matrix);
            let mut w = DVector::zeros(dim + faces);
            w.rows_mut(0, dim).copy_from(space.base().weights());
            w.rows_mut(dim, faces).copy_from(&grad.face_weights);
            Some(vec![NormTerm {
                op: LinOp::Dense(Arc::new(stacked)),
                p: *p,
                weights: w,
                scale: 1.0,
                id_rows: dim,
            }])
        }
        NormKind::Intersection { couple } => {
            let mut terms = lower_kind(couple.x0())?;
            terms.extend(lower_kind(couple.x1())?);
            Some(terms)
        }
        NormKind::Graph { op, inner } => {
            let inner_terms = lower_kind(inner)?;
            let mut terms = inner_terms.clone();
            for t in inner_terms {
                terms.push(NormTerm {
                    op: t.op.compose(op),
                    p: t.p,
                    weights: t.weights,
                    scale: t.scale,
                    id_rows: 0,
                });
            }
            Some(terms)
        }
        NormKind::Sum { .. } | NormKind::DualOf { .. } => None,
    }
}
