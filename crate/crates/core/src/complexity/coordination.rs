use super::{mean, CriterionOutput, MetricWeights};
use crate::derivatives::DerivativeSet;
use crate::skeleton::{LOWER, UPPER};

/// Multi-limb coordination: population variance of the upper-minus-lower
/// intensity difference, gated on both halves actually moving.
pub fn compute_c4(deriv: &DerivativeSet, weights: &MetricWeights) -> f64 {
    coordination(deriv, weights).score
}

/// Mean joint speed of each body half, per frame.
pub fn half_intensities(deriv: &DerivativeSet) -> (Vec<f64>, Vec<f64>) {
    let n = deriv.frames();
    let intensity = |group: &[usize], t: usize| mean(group.iter().map(|&j| deriv.speed(t, j)));
    let upper = (0..n).map(|t| intensity(&UPPER, t)).collect();
    let lower = (0..n).map(|t| intensity(&LOWER, t)).collect();
    (upper, lower)
}

pub(super) fn coordination(deriv: &DerivativeSet, weights: &MetricWeights) -> CriterionOutput {
    let (upper, lower) = half_intensities(deriv);
    let diff: Vec<f64> = upper.iter().zip(&lower).map(|(u, l)| u - l).collect();
    let mu = mean(diff.iter().copied());
    let var = mean(diff.iter().map(|d| (d - mu) * (d - mu)));
    let gate = mean(upper.iter().copied()).min(mean(lower.iter().copied())) > weights.c4.delta;
    CriterionOutput {
        score: if gate { var } else { 0.0 },
        activation: diff.iter().map(|d| d.abs()).collect(),
    }
}
