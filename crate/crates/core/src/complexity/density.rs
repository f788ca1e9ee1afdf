use super::{CriterionOutput, MetricWeights};
use crate::derivatives::DerivativeSet;
use crate::skeleton::LIMBS;
use crate::vec3;

/// Joints whose speed barely varies would blow up the normalised sum, so
/// they are left out of it.
const MIN_SPEED_STD: f64 = 1e-9;

/// Dense-movement score: mean speed normalised per joint plus a weighted
/// median of the filtered acceleration magnitude.
pub fn compute_c2(deriv: &DerivativeSet, weights: &MetricWeights) -> f64 {
    density(deriv, weights).score
}

pub(super) fn density(deriv: &DerivativeSet, weights: &MetricWeights) -> CriterionOutput {
    let n = deriv.frames();
    let inv_std: Vec<f64> = LIMBS
        .iter()
        .map(|&j| {
            let speeds = (0..n).map(|t| deriv.speed(t, j));
            let m = speeds.clone().sum::<f64>() / n as f64;
            let var = speeds.map(|s| (s - m) * (s - m)).sum::<f64>() / n as f64;
            let sd = var.sqrt();
            if sd < MIN_SPEED_STD {
                0.0
            } else {
                1.0 / sd
            }
        })
        .collect();

    let activation: Vec<f64> = (0..n)
        .map(|t| LIMBS.iter().zip(&inv_std).map(|(&j, k)| deriv.speed(t, j) * k).sum())
        .collect();
    let velocity_term = activation.iter().sum::<f64>() / n as f64;

    let mut acc: Vec<f64> = (0..n)
        .flat_map(|t| LIMBS.iter().map(move |&j| vec3::norm(deriv.acceleration(t, j))))
        .collect();
    let median_acc = median(&mut acc);

    CriterionOutput { score: velocity_term + weights.c2.beta * median_acc, activation }
}

/// Median, averaging the two middle values for even lengths.
pub(crate) fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        0.5 * (xs[m - 1] + xs[m])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_odd_even() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), 2.5);
        assert_eq!(median(&mut []), 0.0);
    }
}
