//! Matrix semigroups `t ↦ exp(-tA)`, resolvents, the backward Euler
//! approximation and Laplace-transform quadrature.
//!
//! Sign convention, fixed everywhere: generators are stored as the matrix
//! `A` and the semigroup is `exp(-tA)` (the generator of the semigroup is
//! `-A`). Function names carry the `neg` to keep the convention visible.

use crate::linalg::{self, Factorized, LinalgError};
use crate::spaces::dual::{op_norm_lower, OpNormEstimate};
use crate::spaces::{EvalContext, NormedSpace, SpaceError};
use nalgebra::{DMatrix, DVector};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SemigroupError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("matrix exponential overflowed at t·‖A‖ ≈ {scale:.3e}")]
    Overflow { scale: f64 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

/// Padé(13) coefficients for the diagonal approximant of `exp`.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Threshold on the scaled norm below which Padé(13) is accurate to unit
/// roundoff (Higham's θ₁₃).
const THETA13: f64 = 5.371920351148152;

/// `exp(M)` by scaling-and-squaring with the diagonal Padé(13) approximant.
/// The scaling power comes from the spectral-norm upper bound
/// `sqrt(‖M‖₁ ‖M‖_∞)` so it never under-scales.
pub fn exp_pade(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "exp_pade needs a square matrix");
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let norm = linalg::spectral_norm_upper(m);
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as u32 } else { 0 };
    let scaled = m / 2.0_f64.powi(s as i32);

    let id = DMatrix::<f64>::identity(n, n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let w1 = &a6 * PADE13[13] + &a4 * PADE13[11] + &a2 * PADE13[9];
    let w2 = &w1 * &a6 + &a6 * PADE13[7] + &a4 * PADE13[5] + &a2 * PADE13[3] + &id * PADE13[1];
    let u = &scaled * &w2;
    let v1 = &a6 * PADE13[12] + &a4 * PADE13[10] + &a2 * PADE13[8];
    let v = &v1 * &a6 + &a6 * PADE13[6] + &a4 * PADE13[4] + &a2 * PADE13[2] + &id * PADE13[0];

    let denom = &v - &u;
    let numer = &v + &u;
    let mut e = denom.lu().solve(&numer).unwrap_or_else(|| DMatrix::identity(n, n));
    for _ in 0..s {
        e = &e * &e;
    }
    e
}

/// `exp(-tA)` as a matrix.
pub fn expm_neg(a: &DMatrix<f64>, t: f64) -> DMatrix<f64> {
    if t == 0.0 {
        return DMatrix::identity(a.nrows(), a.ncols());
    }
    exp_pade(&(a * (-t)))
}

/// `exp(-tA) x`; `t = 0` returns `x` exactly.
pub fn expm_neg_apply(
    a: &DMatrix<f64>,
    t: f64,
    x: &DVector<f64>,
) -> Result<DVector<f64>, SemigroupError> {
    if t < 0.0 || !t.is_finite() {
        return Err(SemigroupError::BadParameter(format!("time must be finite and >= 0, got {t}")));
    }
    if a.nrows() != a.ncols() || a.ncols() != x.len() {
        return Err(SemigroupError::Linalg(LinalgError::DimensionMismatch {
            rows: a.nrows(),
            cols: a.ncols(),
            len: x.len(),
        }));
    }
    if t == 0.0 {
        return Ok(x.clone());
    }
    let e = expm_neg(a, t);
    let y = &e * x;
    if y.iter().any(|v| !v.is_finite()) {
        return Err(SemigroupError::Overflow { scale: t * linalg::spectral_norm_upper(a) });
    }
    Ok(y)
}

/// `(A + λI)^{-1} x` by pivoted factorization with a condition guard.
pub fn resolvent_apply(
    a: &DMatrix<f64>,
    lambda: f64,
    x: &DVector<f64>,
) -> Result<DVector<f64>, SemigroupError> {
    if !(lambda > 0.0) {
        return Err(SemigroupError::BadParameter(format!("resolvent needs λ > 0, got {lambda}")));
    }
    let shifted = shifted_matrix(a, lambda);
    Ok(linalg::solve_conditioned(&shifted, x, 1e12)?)
}

fn shifted_matrix(a: &DMatrix<f64>, lambda: f64) -> DMatrix<f64> {
    let mut m = a.clone();
    for i in 0..m.nrows() {
        m[(i, i)] += lambda;
    }
    m
}

/// Backward-Euler approximation `(I + (t/n) A)^{-n} x`, reusing one
/// factorization of `I + (t/n)A` across all `n` solves. Converges to
/// `exp(-tA) x` at rate `O(1/n)`.
pub fn euler_apply(
    a: &DMatrix<f64>,
    t: f64,
    n: usize,
    x: &DVector<f64>,
) -> Result<DVector<f64>, SemigroupError> {
    if !(t > 0.0) || n == 0 {
        return Err(SemigroupError::BadParameter(format!(
            "Euler approximation needs t > 0 and n >= 1, got t={t}, n={n}"
        )));
    }
    let step = shifted_matrix(&(a * (t / n as f64)), 1.0);
    let fact = Factorized::new(&step)?;
    let mut y = x.clone();
    for _ in 0..n {
        y = fact.solve(&y)?;
    }
    Ok(y)
}

/// Result of Laplace-transform quadrature for the resolvent.
#[derive(Debug, Clone)]
pub struct QuadratureOutcome {
    pub value: DVector<f64>,
    /// Tail estimate `e^{-λT} · (trajectory bound at the horizon) / λ`.
    pub truncation_bound: f64,
    /// True when the truncation bound exceeds the requested tolerance.
    pub approximate: bool,
}

/// Composite Gauss–Legendre quadrature of `∫₀^T e^{-λt} exp(-tA) x dt`,
/// `panels` equal panels with a fixed 8-point rule each. For consistent
/// semigroups this reproduces `(A + λI)^{-1} x` up to the reported tail.
pub fn laplace_resolvent_quadrature(
    a: &DMatrix<f64>,
    lambda: f64,
    x: &DVector<f64>,
    horizon: f64,
    panels: usize,
    tol: f64,
) -> Result<QuadratureOutcome, SemigroupError> {
    if !(lambda > 0.0) || !(horizon > 0.0) || panels == 0 {
        return Err(SemigroupError::BadParameter(format!(
            "quadrature needs λ > 0, T > 0, panels >= 1 (got λ={lambda}, T={horizon}, m={panels})"
        )));
    }
    let n = x.len();
    let h = horizon / panels as f64;
    let (nodes, weights) = linalg::gauss_legendre(8);
    // Precompute the propagators for the in-panel offsets and the panel step.
    let offsets: Vec<f64> = nodes.iter().map(|z| 0.5 * h * (z + 1.0)).collect();
    let node_props: Vec<DMatrix<f64>> = offsets.iter().map(|dt| expm_neg(a, *dt)).collect();
    let step_prop = expm_neg(a, h);

    let mut acc = DVector::zeros(n);
    let mut panel_state = x.clone();
    let mut horizon_bound = 0.0_f64;
    for k in 0..panels {
        let t0 = k as f64 * h;
        for (j, prop) in node_props.iter().enumerate() {
            let t = t0 + offsets[j];
            let state = prop * &panel_state;
            let coeff = 0.5 * h * weights[j] * (-lambda * t).exp();
            acc.axpy(coeff, &state, 1.0);
            if k + 1 == panels {
                horizon_bound = horizon_bound.max(state.norm());
            }
        }
        panel_state = &step_prop * &panel_state;
        if panel_state.iter().any(|v| !v.is_finite()) {
            return Err(SemigroupError::Overflow {
                scale: horizon * linalg::spectral_norm_upper(a),
            });
        }
    }
    horizon_bound = horizon_bound.max(panel_state.norm());
    let truncation_bound = (-lambda * horizon).exp() * horizon_bound / lambda;
    Ok(QuadratureOutcome { value: acc, truncation_bound, approximate: truncation_bound > tol })
}

/// Per-time operator-norm estimates of `exp(-tA)` on `space` and their sup.
#[derive(Debug, Clone)]
pub struct SemigroupBound {
    pub sup: f64,
    pub per_time: Vec<(f64, f64)>,
    pub converged: bool,
}

pub fn semigroup_bound(
    a: &DMatrix<f64>,
    space: &NormedSpace,
    times: &[f64],
    ctx: &EvalContext,
) -> Result<SemigroupBound, SemigroupError> {
    if times.is_empty() {
        return Err(SemigroupError::BadParameter("time grid must be nonempty".into()));
    }
    let mut per_time = Vec::with_capacity(times.len());
    let mut sup = 0.0_f64;
    let mut converged = true;
    for &t in times {
        if t < 0.0 {
            return Err(SemigroupError::BadParameter(format!("negative time {t}")));
        }
        let e = expm_neg(a, t);
        let est: OpNormEstimate = op_norm_lower(&e, space, space, ctx)?;
        converged &= est.exact || est.converged;
        sup = sup.max(est.value);
        per_time.push((t, est.value));
    }
    Ok(SemigroupBound { sup, per_time, converged })
}

/// `‖(x - exp(-hA) x)/h - Ax‖_X`: the difference-quotient defect of the
/// generator, which shrinks O(h) as h ↓ 0.
pub fn generator_residual(
    a: &DMatrix<f64>,
    x: &DVector<f64>,
    h: f64,
    space: &NormedSpace,
) -> Result<f64, SemigroupError> {
    if !(h > 0.0) {
        return Err(SemigroupError::BadParameter(format!("step must be positive, got {h}")));
    }
    let shx = expm_neg_apply(a, h, x)?;
    let quotient = (x - shx) / h;
    let defect = quotient - a * x;
    Ok(space.norm(&defect)?)
}

/// Relative semigroup-law defect `‖S_{s+t}x − S_s S_t x‖₂ / ‖S_{s+t}x‖₂`.
pub fn semigroup_law_defect(a: &DMatrix<f64>, s: f64, t: f64, x: &DVector<f64>) -> f64 {
    let direct = expm_neg(a, s + t) * x;
    let composed = expm_neg(a, s) * (expm_neg(a, t) * x);
    (&direct - composed).norm() / direct.norm().max(1e-300)
}

/// A generator matrix paired with the space it acts on. The paper's
/// generator is `-A`; the semigroup is `exp(-tA)`.
#[derive(Debug, Clone)]
pub struct GeneratorRealization {
    a: Arc<DMatrix<f64>>,
    space: NormedSpace,
    spectral_shift: f64,
}

impl GeneratorRealization {
    pub fn new(a: Arc<DMatrix<f64>>, space: NormedSpace) -> Result<Self, SemigroupError> {
        if a.nrows() != a.ncols() || a.ncols() != space.dim() {
            return Err(SemigroupError::Linalg(LinalgError::DimensionMismatch {
                rows: a.nrows(),
                cols: a.ncols(),
                len: space.dim(),
            }));
        }
        Ok(GeneratorRealization { a, space, spectral_shift: 0.0 })
    }

    /// Record the shift `λ₀ ≥ 0` from which all `A + λI`, `λ > λ₀`, are
    /// known invertible; probed on a λ grid by conditioned solves.
    pub fn with_spectral_shift(mut self, shift: f64) -> Self {
        self.spectral_shift = shift.max(0.0);
        self
    }

    pub fn matrix(&self) -> &Arc<DMatrix<f64>> {
        &self.a
    }

    pub fn space(&self) -> &NormedSpace {
        &self.space
    }

    pub fn spectral_shift(&self) -> f64 {
        self.spectral_shift
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Verify `A + λI` is invertible (condition below the cap) on a grid.
    pub fn probe_resolvent(&self, lambdas: &[f64]) -> Result<(), SemigroupError> {
        for &l in lambdas {
            if l <= self.spectral_shift {
                return Err(SemigroupError::BadParameter(format!(
                    "λ = {l} is not above the spectral shift {}",
                    self.spectral_shift
                )));
            }
            let m = shifted_matrix(&self.a, l);
            let cond = linalg::condition_estimate(&m);
            if !(cond < 1e12) {
                return Err(SemigroupError::Linalg(LinalgError::IllConditioned { cond }));
            }
        }
        Ok(())
    }

    pub fn semigroup_apply(&self, t: f64, x: &DVector<f64>) -> Result<DVector<f64>, SemigroupError> {
        expm_neg_apply(&self.a, t, x)
    }

    pub fn resolvent_apply(&self, lambda: f64, x: &DVector<f64>) -> Result<DVector<f64>, SemigroupError> {
        resolvent_apply(&self.a, lambda, x)
    }
}

/// A sampled trajectory `t ↦ exp(-tA) x` with per-time norms in `X`.
#[derive(Debug, Clone)]
pub struct SemigroupTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<DVector<f64>>,
    pub norms: Vec<f64>,
}

impl SemigroupTrajectory {
    pub fn compute(
        realization: &GeneratorRealization,
        x: &DVector<f64>,
        times: &[f64],
    ) -> Result<Self, SemigroupError> {
        let mut sorted = times.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if sorted.iter().any(|t| *t <= 0.0) {
            return Err(SemigroupError::BadParameter("trajectory times must be positive".into()));
        }
        let mut states = Vec::with_capacity(sorted.len());
        let mut norms = Vec::with_capacity(sorted.len());
        for &t in &sorted {
            let s = realization.semigroup_apply(t, x)?;
            norms.push(realization.space.norm(&s)?);
            states.push(s);
        }
        Ok(SemigroupTrajectory { times: sorted, states, norms })
    }
}
