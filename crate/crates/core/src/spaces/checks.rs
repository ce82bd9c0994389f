//! The duality check of this module: the dual of a sum space is the
//! intersection of the duals, measured as `‖f‖_{(X0+X1)'} =
//! max(‖f‖_{X0'}, ‖f‖_{X1'})` on sample functionals.

use super::dual::{dual_norm, DualRoute};
use super::{EvalContext, InterpolationCouple, NormedSpace, SpaceError};
use crate::report::CheckReport;
use nalgebra::DVector;

/// Compare the dual norm of the sum space against the max of the endpoint
/// dual norms on each sample functional. The left side always goes through
/// the optimization route (the sum kind has no closed form); endpoint duals
/// use their own routes. Optimizer non-convergence on any sample marks the
/// report inconclusive, never a pass.
pub fn dual_sum_identity_check(
    couple: &InterpolationCouple,
    samples: &[DVector<f64>],
    pairing: &DVector<f64>,
    tol: f64,
    ctx: &EvalContext,
) -> Result<CheckReport, SpaceError> {
    let mut report = CheckReport::new("dual_sum_identity");
    report.note(
        "left side: dual norm of the sum space by joint ascent over split pairs; \
         right side: max of endpoint dual norms (Hölder closed form on weighted-Lp)",
    );
    report.tolerance("worst_deviation", tol);

    let sum_space = NormedSpace::sum(couple.clone());
    let mut worst = 0.0_f64;
    let mut worst_idx = 0usize;
    for (idx, f) in samples.iter().enumerate() {
        let lhs = dual_norm(f, &sum_space, pairing, ctx)?;
        debug_assert_eq!(lhs.route, DualRoute::ProductAscent);
        let r0 = dual_norm(f, couple.x0(), pairing, ctx)?;
        let r1 = dual_norm(f, couple.x1(), pairing, ctx)?;
        if !lhs.converged {
            report.uncertified(format!("sum-dual ascent did not converge on sample {idx}"));
        }
        if !r0.converged || !r1.converged {
            report.uncertified(format!("endpoint dual norm unconverged on sample {idx}"));
        }
        let rhs = r0.value.max(r1.value);
        let dev = (lhs.value - rhs).abs();
        if dev > worst {
            worst = dev;
            worst_idx = idx;
        }
    }
    report.constant("worst_deviation", worst);
    report.constant("samples", samples.len() as f64);
    report.worst_case("worst_deviation", format!("sample index {worst_idx}"));
    report.assert_le("worst_deviation", worst, 0.0, tol);
    Ok(report.resolve())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::spaces::NormedSpace;

    fn v(data: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(data)
    }

    #[test]
    fn identical_l2_spaces_give_euclidean_norm() {
        let couple = InterpolationCouple::new(
            NormedSpace::lp(2, 2.0).unwrap(),
            NormedSpace::lp(2, 2.0).unwrap(),
        )
        .unwrap();
        let samples = vec![v(&[1.0, 0.0]), v(&[0.6, -0.8])];
        let ones = v(&[1.0, 1.0]);
        let report =
            dual_sum_identity_check(&couple, &samples, &ones, 1e-6, &EvalContext::default())
                .unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }

    #[test]
    fn l1_linf_couple_matches_hand_value() {
        // f = (1,1): ‖f‖_{(ℓ¹)'} = max = 1, ‖f‖_{(ℓ∞)'} = sum = 2, so both
        // sides must equal 2.
        let couple = InterpolationCouple::new(
            NormedSpace::lp(2, 1.0).unwrap(),
            NormedSpace::lp(2, f64::INFINITY).unwrap(),
        )
        .unwrap();
        let ones = v(&[1.0, 1.0]);
        let sum_space = NormedSpace::sum(couple.clone());
        let lhs = dual_norm(&v(&[1.0, 1.0]), &sum_space, &ones, &EvalContext::default()).unwrap();
        assert!((lhs.value - 2.0).abs() < 1e-9, "sum dual {}", lhs.value);

        let report = dual_sum_identity_check(
            &couple,
            &[v(&[1.0, 1.0]), v(&[0.0, 0.0]), v(&[2.0, -0.5])],
            &ones,
            1e-6,
            &EvalContext::default(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }
}
