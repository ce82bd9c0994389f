//! Dual norms `sup { |⟨f, x⟩| : ‖x‖_X ≤ 1 }` and operator norms.
//!
//! Weighted-Lp duals are Hölder closed forms. Sum-space duals ascend over
//! the product of the two endpoint balls (never through the duality
//! identity they are used to verify). Everything else runs the generic
//! quotient ascent, so reported values from the optimization route are
//! certified lower bounds with a convergence flag.

use super::{lp_norm, Exponent, InterpolationCouple, NormKind, NormedSpace, SpaceError};
use crate::linalg;
use crate::opt::ascent::{maximize_quotient, AscentResult};
use crate::spaces::EvalContext;
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualRoute {
    HolderClosedForm,
    Ascent,
    ProductAscent,
}

#[derive(Debug, Clone)]
pub struct DualNormResult {
    pub value: f64,
    /// A point of the unit ball achieving (or approaching) the supremum.
    pub maximizer: DVector<f64>,
    pub converged: bool,
    pub route: DualRoute,
}

/// Dual norm of `f` against `space`, paired by `⟨f,x⟩ = Σ aᵢ fᵢ xᵢ`.
pub fn dual_norm(
    f: &DVector<f64>,
    space: &NormedSpace,
    pairing: &DVector<f64>,
    ctx: &EvalContext,
) -> Result<DualNormResult, SpaceError> {
    let n = space.dim();
    if f.len() != n || pairing.len() != n {
        return Err(SpaceError::DimensionMismatch { expected: n, got: f.len().max(pairing.len()) });
    }
    if f.iter().all(|v| *v == 0.0) {
        return Ok(DualNormResult {
            value: 0.0,
            maximizer: DVector::zeros(n),
            converged: true,
            route: DualRoute::HolderClosedForm,
        });
    }
    match space.kind() {
        NormKind::WeightedLp { p } => Ok(holder_dual(f, *p, space.base().weights(), pairing)),
        NormKind::Sum { couple } => product_ascent(f, couple, pairing, ctx),
        _ => ascent_dual(f, space, pairing, ctx),
    }
}

/// Dual norm through the optimization path even where a closed form exists.
/// This is the second route of the closed-form/optimizer agreement checks.
pub fn dual_norm_via_ascent(
    f: &DVector<f64>,
    space: &NormedSpace,
    pairing: &DVector<f64>,
    ctx: &EvalContext,
) -> Result<DualNormResult, SpaceError> {
    match space.kind() {
        NormKind::Sum { couple } => product_ascent(f, couple, pairing, ctx),
        _ => ascent_dual(f, space, pairing, ctx),
    }
}

fn holder_dual(
    f: &DVector<f64>,
    p: Exponent,
    w: &DVector<f64>,
    pairing: &DVector<f64>,
) -> DualNormResult {
    let n = f.len();
    let c = DVector::from_iterator(n, f.iter().zip(pairing.iter()).map(|(fi, ai)| fi * ai));
    if p.is_one() {
        // dual of L¹(w) is the weighted max.
        let mut best = 0.0;
        let mut idx = 0;
        for i in 0..n {
            let v = c[i].abs() / w[i];
            if v > best {
                best = v;
                idx = i;
            }
        }
        let mut x = DVector::zeros(n);
        x[idx] = c[idx].signum() / w[idx];
        return DualNormResult {
            value: best,
            maximizer: x,
            converged: true,
            route: DualRoute::HolderClosedForm,
        };
    }
    if p.is_infinite() {
        let value: f64 = c.iter().map(|v| v.abs()).sum();
        let x = DVector::from_iterator(n, c.iter().map(|v| v.signum()));
        return DualNormResult { value, maximizer: x, converged: true, route: DualRoute::HolderClosedForm };
    }
    let pv = p.value();
    let q = p.conjugate().value();
    // ‖f‖_{X'} = (Σ |cᵢ|^q wᵢ^{1-q})^{1/q}
    let peak = c
        .iter()
        .zip(w.iter())
        .map(|(ci, wi)| ci.abs() / wi)
        .fold(0.0_f64, f64::max);
    let value = if peak == 0.0 {
        0.0
    } else {
        let s: f64 = c
            .iter()
            .zip(w.iter())
            .map(|(ci, wi)| wi * (ci.abs() / (wi * peak)).powf(q))
            .sum();
        peak * s.powf(1.0 / q)
    };
    // KKT maximizer xᵢ ∝ sgn(cᵢ)(|cᵢ|/wᵢ)^{q-1}, normalized in ‖·‖_{p,w}.
    let mut x = DVector::from_iterator(
        n,
        c.iter().zip(w.iter()).map(|(ci, wi)| ci.signum() * (ci.abs() / wi).powf(q - 1.0)),
    );
    let nx = lp_norm(&x, Exponent::new(pv).unwrap(), w).unwrap();
    if nx > 0.0 {
        x /= nx;
    }
    DualNormResult { value, maximizer: x, converged: true, route: DualRoute::HolderClosedForm }
}

fn ascent_dual(
    f: &DVector<f64>,
    space: &NormedSpace,
    pairing: &DVector<f64>,
    ctx: &EvalContext,
) -> Result<DualNormResult, SpaceError> {
    let n = space.dim();
    let c = DVector::from_iterator(n, f.iter().zip(pairing.iter()).map(|(fi, ai)| fi * ai));
    let cn = c.clone();
    let num = move |x: &DVector<f64>| (cn.dot(x), cn.clone());
    let den = |x: &DVector<f64>| match (space.norm_with(x, ctx), space.subgradient(x, ctx)) {
        (Ok(v), Ok(g)) => (v, g),
        _ => (f64::NAN, DVector::zeros(n)),
    };
    let hints = [c.clone()];
    let res: AscentResult = maximize_quotient(n, &num, &den, &hints, ctx.seed, &ctx.ascent);
    finish_ascent(res, space, ctx, DualRoute::Ascent)
}

/// Dual of the sum norm by joint ascent over split pairs `(x₀, x₁)`:
/// `sup ⟨f, x₀+x₁⟩ / (‖x₀‖_{X0} + ‖x₁‖_{X1})`.
fn product_ascent(
    f: &DVector<f64>,
    couple: &InterpolationCouple,
    pairing: &DVector<f64>,
    ctx: &EvalContext,
) -> Result<DualNormResult, SpaceError> {
    let n = couple.dim();
    let c = DVector::from_iterator(n, f.iter().zip(pairing.iter()).map(|(fi, ai)| fi * ai));
    let mut cc = DVector::zeros(2 * n);
    cc.rows_mut(0, n).copy_from(&c);
    cc.rows_mut(n, n).copy_from(&c);
    let ccn = cc.clone();
    let num = move |z: &DVector<f64>| (ccn.dot(z), ccn.clone());
    let den = |z: &DVector<f64>| {
        let z0 = z.rows(0, n).into_owned();
        let z1 = z.rows(n, n).into_owned();
        let n0 = couple.x0().norm_with(&z0, ctx);
        let n1 = couple.x1().norm_with(&z1, ctx);
        let g0 = couple.x0().subgradient(&z0, ctx);
        let g1 = couple.x1().subgradient(&z1, ctx);
        match (n0, n1, g0, g1) {
            (Ok(n0), Ok(n1), Ok(g0), Ok(g1)) => {
                let mut g = DVector::zeros(2 * n);
                g.rows_mut(0, n).copy_from(&g0);
                g.rows_mut(n, n).copy_from(&g1);
                (n0 + n1, g)
            }
            _ => (f64::NAN, DVector::zeros(2 * n)),
        }
    };
    // Hints: everything in one factor, plus the even split.
    let mut h0 = DVector::zeros(2 * n);
    h0.rows_mut(0, n).copy_from(&c);
    let mut h1 = DVector::zeros(2 * n);
    h1.rows_mut(n, n).copy_from(&c);
    let hints = [h0, h1, cc];
    let res = maximize_quotient(2 * n, &num, &den, &hints, ctx.seed ^ 0x50, &ctx.ascent);
    // Fold the split back into a unit vector of the sum space.
    let z0 = res.maximizer.rows(0, n).into_owned();
    let z1 = res.maximizer.rows(n, n).into_owned();
    let total = couple.x0().norm_with(&z0, ctx)? + couple.x1().norm_with(&z1, ctx)?;
    let x = if total > 0.0 { (z0 + z1) / total } else { DVector::zeros(n) };
    Ok(DualNormResult {
        value: res.value.max(0.0),
        maximizer: x,
        converged: res.converged,
        route: DualRoute::ProductAscent,
    })
}

fn finish_ascent(
    res: AscentResult,
    space: &NormedSpace,
    ctx: &EvalContext,
    route: DualRoute,
) -> Result<DualNormResult, SpaceError> {
    let norm = space.norm_with(&res.maximizer, ctx)?;
    let maximizer = if norm > 0.0 { &res.maximizer / norm } else { res.maximizer.clone() };
    Ok(DualNormResult { value: res.value.max(0.0), maximizer, converged: res.converged, route })
}

#[derive(Debug, Clone)]
pub struct OpNormEstimate {
    pub value: f64,
    /// Vector witnessing the value (a lower-bound certificate).
    pub witness: DVector<f64>,
    /// True when the route is a closed form rather than an ascent.
    pub exact: bool,
    pub converged: bool,
}

/// Operator norm of `T : src → tgt`, exact where closed forms exist
/// (source L¹, target L∞, the L²→L² pair), multi-start ascent otherwise.
/// Ascent values are certified lower bounds.
pub fn op_norm_lower(
    t: &DMatrix<f64>,
    src: &NormedSpace,
    tgt: &NormedSpace,
    ctx: &EvalContext,
) -> Result<OpNormEstimate, SpaceError> {
    if t.ncols() != src.dim() {
        return Err(SpaceError::DimensionMismatch { expected: src.dim(), got: t.ncols() });
    }
    if t.nrows() != tgt.dim() {
        return Err(SpaceError::DimensionMismatch { expected: tgt.dim(), got: t.nrows() });
    }
    let src_lp = src.is_weighted_lp();
    let tgt_lp = tgt.is_weighted_lp();

    // L¹ source: extreme points of the ball are ±eⱼ/wⱼ.
    if let Some(p) = src_lp {
        if p.is_one() && norm_is_closed_form(tgt) {
            let w = src.base().weights();
            let mut best = 0.0;
            let mut witness = DVector::zeros(src.dim());
            for j in 0..src.dim() {
                let col = t.column(j).into_owned();
                let v = tgt.norm_with(&col, ctx)? / w[j];
                if v > best {
                    best = v;
                    witness = DVector::zeros(src.dim());
                    witness[j] = 1.0 / w[j];
                }
            }
            return Ok(OpNormEstimate { value: best, witness, exact: true, converged: true });
        }
    }

    // L² → L²: singular value of the similarity-transformed matrix.
    if let (Some(ps), Some(pt)) = (src_lp, tgt_lp) {
        if ps.value() == 2.0 && pt.value() == 2.0 {
            let ws = src.base().weights();
            let wt = tgt.base().weights();
            let mut m = t.clone();
            for i in 0..m.nrows() {
                let s = wt[i].sqrt();
                m.row_mut(i).scale_mut(s);
            }
            for j in 0..m.ncols() {
                let s = 1.0 / ws[j].sqrt();
                m.column_mut(j).scale_mut(s);
            }
            let svd = m.svd(false, true);
            let value = svd.singular_values[0];
            let vrow = svd.v_t.as_ref().expect("requested").row(0).transpose();
            let mut witness = vrow.clone();
            for j in 0..witness.len() {
                witness[j] /= ws[j].sqrt();
            }
            return Ok(OpNormEstimate { value, witness, exact: true, converged: true });
        }
        // target L∞: rows act as functionals on the source.
        if pt.is_infinite() {
            let ones = DVector::from_element(src.dim(), 1.0);
            let mut best = DualNormResult {
                value: 0.0,
                maximizer: DVector::zeros(src.dim()),
                converged: true,
                route: DualRoute::HolderClosedForm,
            };
            for i in 0..t.nrows() {
                let row = t.row(i).transpose();
                let r = holder_dual(&row, ps, src.base().weights(), &ones);
                if r.value > best.value {
                    best = r;
                }
            }
            return Ok(OpNormEstimate {
                value: best.value,
                witness: best.maximizer,
                exact: true,
                converged: true,
            });
        }
    }

    // General route: quotient ascent with an SVD hint.
    let num = |x: &DVector<f64>| {
        let tx = t * x;
        match (tgt.norm_with(&tx, ctx), tgt.subgradient(&tx, ctx)) {
            (Ok(v), Ok(g)) => (v, t.transpose() * g),
            _ => (f64::NAN, DVector::zeros(x.len())),
        }
    };
    let den = |x: &DVector<f64>| match (src.norm_with(x, ctx), src.subgradient(x, ctx)) {
        (Ok(v), Ok(g)) => (v, g),
        _ => (f64::NAN, DVector::zeros(x.len())),
    };
    let svd = t.clone().svd(false, true);
    let hint = svd.v_t.as_ref().map(|vt| vt.row(0).transpose());
    let hints: Vec<DVector<f64>> = hint.into_iter().collect();
    let res = maximize_quotient(src.dim(), &num, &den, &hints, ctx.seed ^ 0x09, &ctx.ascent);
    Ok(OpNormEstimate {
        value: res.value.max(0.0),
        witness: res.maximizer,
        exact: false,
        converged: res.converged,
    })
}

/// True when evaluating the norm involves no optimizer anywhere.
pub fn norm_is_closed_form(space: &NormedSpace) -> bool {
    match space.kind() {
        NormKind::WeightedLp { .. } | NormKind::Sobolev1p { .. } => true,
        NormKind::Graph { inner, .. } => norm_is_closed_form(inner),
        NormKind::Intersection { couple } => {
            norm_is_closed_form(couple.x0()) && norm_is_closed_form(couple.x1())
        }
        NormKind::DualOf { inner, .. } => inner.is_weighted_lp().is_some(),
        NormKind::Sum { .. } => false,
    }
}

/// Certified upper bound for `‖T‖_{Lp(w) → Lp(w)}` from the exact norms at
/// `p ∈ {1, 2, ∞}` via interpolation between the nearest exact exponents.
/// Requires the same weight vector on both sides; `None` otherwise.
pub fn op_norm_upper_lp(t: &DMatrix<f64>, p: Exponent, w: &DVector<f64>) -> Option<f64> {
    if t.nrows() != t.ncols() || t.nrows() != w.len() {
        return None;
    }
    let n1 = weighted_l1_op_norm(t, w);
    let ninf = linalg::inf_norm(t);
    let n2 = {
        let mut m = t.clone();
        for i in 0..m.nrows() {
            let s = w[i].sqrt();
            m.row_mut(i).scale_mut(s);
        }
        for j in 0..m.ncols() {
            let s = 1.0 / w[j].sqrt();
            m.column_mut(j).scale_mut(s);
        }
        linalg::spectral_norm(&m)
    };
    let pv = p.value();
    Some(if pv == 1.0 {
        n1
    } else if pv == 2.0 {
        n2
    } else if pv.is_infinite() {
        ninf
    } else if pv < 2.0 {
        // 1/p = (1-θ)/1 + θ/2 ⇒ θ = 2 - 2/p
        let theta = 2.0 - 2.0 / pv;
        n1.powf(1.0 - theta) * n2.powf(theta)
    } else {
        // 1/p = (1-θ)/2 ⇒ θ = 1 - 2/p
        let theta = 1.0 - 2.0 / pv;
        n2.powf(1.0 - theta) * ninf.powf(theta)
    })
}

pub fn weighted_l1_op_norm(t: &DMatrix<f64>, w: &DVector<f64>) -> f64 {
    (0..t.ncols())
        .map(|j| {
            t.column(j)
                .iter()
                .enumerate()
                .map(|(i, v)| w[i] * v.abs())
                .sum::<f64>()
                / w[j]
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::DiscreteMeasureSpace;

    fn v(data: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(data)
    }

    #[test]
    fn dual_of_l2_is_self_dual() {
        let sp = NormedSpace::lp(2, 2.0).unwrap();
        let ones = v(&[1.0, 1.0]);
        let r = dual_norm(&v(&[1.0, 0.0]), &sp, &ones, &EvalContext::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dual_of_l1_is_linf() {
        let sp = NormedSpace::lp(2, 1.0).unwrap();
        let ones = v(&[1.0, 1.0]);
        let r = dual_norm(&v(&[1.0, 1.0]), &sp, &ones, &EvalContext::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dual_of_l3_matches_holder_and_sampling() {
        let sp = NormedSpace::lp(2, 3.0).unwrap();
        let ones = v(&[1.0, 1.0]);
        let f = v(&[2.0, 1.0]);
        let r = dual_norm(&f, &sp, &ones, &EvalContext::default()).unwrap();
        let expected = (2.0_f64.powf(1.5) + 1.0).powf(2.0 / 3.0);
        assert!((r.value - expected).abs() < 1e-13, "{} vs {expected}", r.value);
        // Independent oracle: sweep the unit circle at 1e-3 resolution.
        let mut best: f64 = 0.0;
        let steps = 6284;
        for k in 0..steps {
            let a = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
            let x = v(&[a.cos(), a.sin()]);
            let nx = sp.norm(&x).unwrap();
            best = best.max((f.dot(&x) / nx).abs());
        }
        assert!((r.value - best).abs() < 1e-3, "{} vs sampled {best}", r.value);
    }

    #[test]
    fn ascent_path_agrees_with_holder_on_lp() {
        let base = DiscreteMeasureSpace::new(v(&[0.5, 1.5, 2.0])).unwrap();
        let pairing = base.weights().clone();
        for p in [1.5, 2.0, 4.0] {
            let sp = NormedSpace::weighted_lp(base.clone(), Exponent::new(p).unwrap());
            let f = v(&[0.7, -1.2, 0.4]);
            let exact = dual_norm(&f, &sp, &pairing, &EvalContext::default()).unwrap();
            let asc = dual_norm_via_ascent(&f, &sp, &pairing, &EvalContext::default()).unwrap();
            assert!(
                (exact.value - asc.value).abs() < 1e-6 * exact.value,
                "p={p}: {} vs {}",
                exact.value,
                asc.value
            );
        }
    }

    #[test]
    fn maximizer_attains_value() {
        let sp = NormedSpace::lp(3, 1.5).unwrap();
        let ones = v(&[1.0, 1.0, 1.0]);
        let f = v(&[1.0, -2.0, 0.3]);
        let r = dual_norm(&f, &sp, &ones, &EvalContext::default()).unwrap();
        let attained = f.dot(&r.maximizer).abs();
        let ball = sp.norm(&r.maximizer).unwrap();
        assert!((ball - 1.0).abs() < 1e-12);
        assert!((attained - r.value).abs() < 1e-12);
    }

    #[test]
    fn l2_operator_norm_matches_svd() {
        let t = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let sp = NormedSpace::lp(2, 2.0).unwrap();
        let est = op_norm_lower(&t, &sp, &sp, &EvalContext::default()).unwrap();
        let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
        assert!(est.exact);
        assert!((est.value - golden).abs() < 1e-12);
    }

    #[test]
    fn l1_linf_operator_norms_are_row_column_sums() {
        let t = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        let l1 = NormedSpace::lp(2, 1.0).unwrap();
        let linf = NormedSpace::lp(2, f64::INFINITY).unwrap();
        let n1 = op_norm_lower(&t, &l1, &l1, &EvalContext::default()).unwrap();
        let ninf = op_norm_lower(&t, &linf, &linf, &EvalContext::default()).unwrap();
        assert!((n1.value - 2.0).abs() < 1e-14);
        assert!((ninf.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_operator_norm_is_max_entry_every_p() {
        let t = DMatrix::from_row_slice(2, 2, &[-3.0, 0.0, 0.0, 2.0]);
        for p in [1.0, 1.7, 2.0, 4.0, f64::INFINITY] {
            let sp = NormedSpace::lp(2, p).unwrap();
            let est = op_norm_lower(&t, &sp, &sp, &EvalContext::default()).unwrap();
            assert!(
                (est.value - 3.0).abs() < 1e-8,
                "p={p}: got {}",
                est.value
            );
        }
    }

    #[test]
    fn upper_bound_dominates_ascent_estimate() {
        let t = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, -0.5, 2.0, 0.3, 0.0, 1.0, -1.0]);
        let w = v(&[1.0, 2.0, 0.5]);
        for p in [1.3, 2.5, 5.0] {
            let pe = Exponent::new(p).unwrap();
            let upper = op_norm_upper_lp(&t, pe, &w).unwrap();
            let base = DiscreteMeasureSpace::new(w.clone()).unwrap();
            let sp = NormedSpace::weighted_lp(base, pe);
            let lower = op_norm_lower(&t, &sp, &sp, &EvalContext::default()).unwrap();
            assert!(
                lower.value <= upper + 1e-9,
                "p={p}: lower {} > upper {upper}",
                lower.value
            );
        }
    }
}
