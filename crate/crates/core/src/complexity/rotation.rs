use std::f64::consts::{PI, TAU};

use super::{mean, CriterionOutput, MetricWeights};
use crate::motion::MotionSequence;
use crate::savgol;
use crate::vec3::wrap_angle;

/// Remove the 2-pi jumps of a wrapped angle series.
pub fn unwrap_angles(angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len());
    let mut acc = match angles.first() {
        Some(&a) => a,
        None => return out,
    };
    out.push(acc);
    for w in angles.windows(2) {
        acc += wrap_angle(w[1] - w[0]);
        out.push(acc);
    }
    out
}

const FULL_TURN_TOLERANCE: f64 = 1e-9;

/// Rotation score from the pelvis yaw: normalised net turn, mean absolute
/// angular velocity and mean absolute angular acceleration (per frame) of
/// the unwrapped, smoothed yaw.
pub fn compute_c3(seq: &MotionSequence, weights: &MetricWeights) -> f64 {
    rotation(seq, weights).score
}

pub(super) fn rotation(seq: &MotionSequence, weights: &MetricWeights) -> CriterionOutput {
    let w = weights.c3;
    let yaw = seq.yaw_series();
    let n = yaw.len();
    let unwrapped = unwrap_angles(&yaw);
    // Net turn of the continuous yaw, so a global heading offset cannot move
    // it across the wrap seam. Remainders within round-off of a full turn
    // count as zero.
    let mut net = (unwrapped[n - 1] - unwrapped[0]).abs() % TAU;
    if TAU - net < FULL_TURN_TOLERANCE {
        net = 0.0;
    }
    let net = net / PI;

    let smooth = savgol::smooth_adaptive(weights.savgol, &unwrapped)
        .expect("metric weights validated before use");
    let vel: Vec<f64> = smooth.windows(2).map(|p| p[1] - p[0]).collect();
    let acc: Vec<f64> = vel.windows(2).map(|v| v[1] - v[0]).collect();

    let score = w.gamma1 * net
        + w.gamma2 * mean(vel.iter().map(|v| v.abs()))
        + w.gamma3 * mean(acc.iter().map(|a| a.abs()));

    let mut activation: Vec<f64> = vel.iter().map(|v| v.abs()).collect();
    activation.push(*activation.last().unwrap_or(&0.0));
    CriterionOutput { score, activation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn unwrap_across_seam() {
        let a = [3.0, -3.0, -2.5];
        let u = unwrap_angles(&a);
        assert!((u[1] - (TAU - 3.0)).abs() < 1e-12);
        assert!((u[2] - (TAU - 2.5)).abs() < 1e-12);
    }

    #[test]
    fn no_rotation_scores_zero() {
        let seq = fixtures::static_pose(40, 60.0).rotated_y(0.7);
        assert!(compute_c3(&seq, &MetricWeights::default()).abs() < 1e-12);
    }

    #[test]
    fn uniform_half_turn() {
        let n = 121;
        let seq = fixtures::spinner(0, n, 60.0, PI);
        let got = compute_c3(&seq, &MetricWeights::default());
        let expect = 0.3 + PI / (n - 1) as f64;
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
    }

    #[test]
    fn full_turn_net_term_vanishes() {
        let n = 121;
        let seq = fixtures::spinner(0, n, 60.0, TAU);
        let got = compute_c3(&seq, &MetricWeights::default());
        let expect = TAU / (n - 1) as f64;
        assert!((got - expect).abs() < 1e-9, "{got} vs {expect}");
    }
}
