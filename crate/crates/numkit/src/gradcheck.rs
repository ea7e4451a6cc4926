//! Central-difference validation of analytic gradients.

use crate::{Error, ParamSet, Real, Result};

/// Compares the analytic gradients stored in `set` against central
/// differences of `loss` and returns the maximum relative error, with
/// denominator `max(|analytic|, |numeric|, 1e-8)`.
///
/// The caller must have populated `Param::grad` (one backward pass) before
/// calling; `loss` must be a pure function of the parameter values.
pub fn finite_diff_check<F>(set: &mut ParamSet, mut loss: F, h: Real) -> Result<Real>
where
    F: FnMut(&ParamSet) -> Result<Real>,
{
    assert!(h > 0.0, "finite_diff_check: h must be positive");
    let mut max_rel: Real = 0.0;
    for id in set.ids().collect::<Vec<_>>() {
        let n = set.get(id).value.data().len();
        for i in 0..n {
            let orig = set.get(id).value.data()[i];

            set.get_mut(id).value.data_mut()[i] = orig + h;
            let up = loss(set)?;
            set.get_mut(id).value.data_mut()[i] = orig - h;
            let down = loss(set)?;
            set.get_mut(id).value.data_mut()[i] = orig;

            if !up.is_finite() || !down.is_finite() {
                return Err(Error::NonFiniteLoss);
            }
            let numeric = (up - down) / (2.0 * h);
            let analytic = set.get(id).grad.data()[i];
            let denom = analytic.abs().max(numeric.abs()).max(1e-8);
            max_rel = max_rel.max((analytic - numeric).abs() / denom);
        }
    }
    Ok(max_rel)
}
