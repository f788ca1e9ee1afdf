use super::{mean, CriterionOutput, MetricWeights};
use crate::derivatives::DerivativeSet;
use crate::motion::MotionSequence;
use crate::skeleton::{PAIRS, PELVIS};
use crate::vec3::{self, Vec3};

/// Distance between a left joint and the sagittal mirror image of its right
/// partner, measured in the body frame (pelvis at the origin, facing +Z).
pub fn mirror_offset(left: Vec3, right: Vec3, pelvis: Vec3, yaw: f64) -> f64 {
    let l = vec3::rotate_y(vec3::sub(left, pelvis), -yaw);
    let r = vec3::rotate_y(vec3::sub(right, pelvis), -yaw);
    vec3::dist(l, [-r[0], r[1], r[2]])
}

/// Bilateral asymmetry: mean weighted left/right speed and mirror-position
/// differences, with a penalty when one side barely moves.
pub fn compute_c5(seq: &MotionSequence, deriv: &DerivativeSet, weights: &MetricWeights) -> f64 {
    asymmetry(seq, deriv, weights).score
}

pub(super) fn asymmetry(seq: &MotionSequence, deriv: &DerivativeSet, weights: &MetricWeights) -> CriterionOutput {
    let n = seq.frames();
    let w = weights.c5;

    let inv: Vec<f64> = PAIRS
        .iter()
        .map(|&(l, r)| {
            let m = mean((0..n).map(|t| 0.5 * (deriv.filtered_speed(t, l) + deriv.filtered_speed(t, r))));
            1.0 / (m + w.epsilon)
        })
        .collect();
    let total: f64 = inv.iter().sum();
    let pair_weights: Vec<f64> = inv.iter().map(|x| x / total).collect();

    let yaw = seq.yaw_series();
    let activation: Vec<f64> = (0..n)
        .map(|t| {
            let pelvis = seq.pos(t, PELVIS);
            PAIRS
                .iter()
                .zip(&pair_weights)
                .map(|(&(l, r), wj)| {
                    let dv = (deriv.speed(t, l) - deriv.speed(t, r)).abs();
                    let dp = mirror_offset(seq.pos(t, l), seq.pos(t, r), pelvis, yaw[t]);
                    wj * (dv + 0.5 * dp)
                })
                .sum()
        })
        .collect();

    let side_total = |pick: fn((usize, usize)) -> usize| -> f64 {
        (0..n)
            .map(|t| PAIRS.iter().map(|&p| deriv.filtered_speed(t, pick(p))).sum::<f64>())
            .sum()
    };
    let v_left = side_total(|p| p.0);
    let v_right = side_total(|p| p.1);
    let dominated = v_left.min(v_right) / (v_left.max(v_right) + w.epsilon) < w.delta;
    let penalty = if dominated { 1.0 + w.lambda } else { 1.0 };

    CriterionOutput { score: mean(activation.iter().copied()) * penalty, activation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivatives::derivatives_adaptive;
    use crate::fixtures;

    #[test]
    fn mirror_symmetric_motion_scores_zero() {
        let seq = fixtures::mirror_arms(4, 120, 60.0);
        let w = MetricWeights::default();
        let d = derivatives_adaptive(&seq, w.savgol).unwrap();
        assert!(compute_c5(&seq, &d, &w) < 1e-9);
    }

    #[test]
    fn one_sided_motion_gets_penalty() {
        let seq = fixtures::asymmetric_arms(4, 120, 60.0);
        let w = MetricWeights::default();
        let d = derivatives_adaptive(&seq, w.savgol).unwrap();
        let out = asymmetry(&seq, &d, &w);
        let base = mean(out.activation.iter().copied());
        assert!(base > 0.0);
        assert!((out.score - 1.5 * base).abs() < 1e-12 * out.score.max(1.0));
    }

    #[test]
    fn mirror_offset_is_zero_for_mirrored_points() {
        let yaw = 0.8;
        let pel = [0.3, 0.9, -1.2];
        let l_local = [0.2, 0.1, 0.05];
        let r_local = [-0.2, 0.1, 0.05];
        let l = vec3::add(vec3::rotate_y(l_local, yaw), pel);
        let r = vec3::add(vec3::rotate_y(r_local, yaw), pel);
        assert!(mirror_offset(l, r, pel, yaw) < 1e-15);
    }
}
