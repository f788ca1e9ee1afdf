//! Frames where a complexity activation stays high, and which joints a rule
//! should edit there.

use serde::{Deserialize, Serialize};

use crate::complexity::{half_intensities, ComplexityProfile};
use crate::criterion::Criterion;
use crate::derivatives::derivatives_adaptive;
use crate::error::Result;
use crate::motion::MotionSequence;
use crate::skeleton::{chain, Chain, CHAINS, JOINT_COUNT};
use crate::trends::{overlap_ratio, MotionTrend};

/// Overlap a limb trend needs with an interval for its chain to be edited
/// under the density rule.
const TREND_OVERLAP: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexInterval {
    pub criterion: Criterion,
    #[serde(rename = "s")]
    pub start: usize,
    #[serde(rename = "e")]
    pub end: usize,
    pub joints: Vec<usize>,
}

impl ComplexInterval {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Maximal runs of `activation > tau` as inclusive `(start, end)` frame
/// pairs, keeping those with `end - start >= min_len`.
pub fn active_runs(activation: &[f64], tau: f64, min_len: usize) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut t = 0;
    while t < activation.len() {
        if activation[t] > tau {
            let s = t;
            while t + 1 < activation.len() && activation[t + 1] > tau {
                t += 1;
            }
            if t - s >= min_len {
                runs.push((s, t));
            }
        }
        t += 1;
    }
    runs
}

/// Linear-interpolated percentile (`q` in [0, 100]).
pub fn percentile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = (q / 100.0).clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}

fn flatten(chains: &[&Chain]) -> Vec<usize> {
    chains.iter().flat_map(|c| c.joints.iter().copied()).collect()
}

/// Joints each rule edits inside `[start, end]`.
///
/// * footwork: both leg chains
/// * density: limb chains with a trend overlapping the interval by at least
///   half (all four limb chains when none does)
/// * rotation: the whole body
/// * coordination: the arm or leg chains, whichever half moves faster on
///   average inside the interval
/// * asymmetry: the right arm chain
pub fn select_target_joints(
    criterion: Criterion,
    trends: &[MotionTrend],
    span: (usize, usize),
    seq: &MotionSequence,
    half_speed: Option<(&[f64], &[f64])>,
) -> Vec<usize> {
    let legs = [&CHAINS[chain::LEFT_LEG], &CHAINS[chain::RIGHT_LEG]];
    let arms = [&CHAINS[chain::LEFT_ARM], &CHAINS[chain::RIGHT_ARM]];
    match criterion {
        Criterion::Footwork => flatten(&legs),
        Criterion::Density => {
            let limbs = [legs[0], legs[1], arms[0], arms[1]];
            let hit: Vec<&Chain> = limbs
                .iter()
                .copied()
                .filter(|c| {
                    trends
                        .iter()
                        .any(|t| c.joints.contains(&t.joint) && overlap_ratio((t.start, t.end), span) >= TREND_OVERLAP)
                })
                .collect();
            if hit.is_empty() {
                flatten(&limbs)
            } else {
                flatten(&hit)
            }
        }
        Criterion::Rotation => (0..JOINT_COUNT).collect(),
        Criterion::Coordination => {
            let (upper, lower) = match half_speed {
                Some(h) => h,
                None => return flatten(&arms),
            };
            let window = span.0..=span.1.min(seq.frames() - 1);
            let avg = |xs: &[f64]| xs[window.clone()].iter().sum::<f64>();
            if avg(upper) >= avg(lower) {
                flatten(&arms)
            } else {
                flatten(&legs)
            }
        }
        Criterion::Asymmetry => CHAINS[chain::RIGHT_ARM].joints.to_vec(),
    }
}

/// Intervals where `criterion`'s activation exceeds `tau` for at least
/// `min_len` frame steps, with their target joints.
pub fn detect_intervals(
    seq: &MotionSequence,
    profile: &ComplexityProfile,
    criterion: Criterion,
    tau: f64,
    min_len: usize,
    trends: &[MotionTrend],
) -> Result<Vec<ComplexInterval>> {
    let runs = active_runs(profile.activations.get(criterion), tau, min_len);
    let halves = if criterion == Criterion::Coordination && !runs.is_empty() {
        Some(half_intensities(&derivatives_adaptive(seq, profile.weights.savgol)?))
    } else {
        None
    };
    Ok(runs
        .into_iter()
        .map(|span| ComplexInterval {
            criterion,
            start: span.0,
            end: span.1,
            joints: select_target_joints(
                criterion,
                trends,
                span,
                seq,
                halves.as_ref().map(|(u, l)| (u.as_slice(), l.as_slice())),
            ),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{compute_profile, MetricWeights};
    use crate::fixtures;
    use crate::skeleton::{LEFT_ARM, LEFT_LEG, RIGHT_ARM, RIGHT_LEG};

    #[test]
    fn all_below_threshold_is_empty() {
        assert!(active_runs(&[0.1, 0.2, 0.3], 0.5, 2).is_empty());
    }

    #[test]
    fn short_run_is_excluded() {
        // One run spanning 4 steps with min length 5.
        let mut a = vec![0.0; 20];
        for x in &mut a[3..=7] {
            *x = 1.0;
        }
        assert!(active_runs(&a, 0.5, 5).is_empty());
        assert_eq!(active_runs(&a, 0.5, 4), vec![(3, 7)]);
    }

    #[test]
    fn square_wave_keeps_long_run_only() {
        // Runs spanning 10 and 3 steps.
        let mut a = vec![0.0; 40];
        for x in &mut a[2..=12] {
            *x = 2.0;
        }
        for x in &mut a[20..=23] {
            *x = 2.0;
        }
        assert_eq!(active_runs(&a, 1.0, 5), vec![(2, 12)]);
    }

    #[test]
    fn run_reaching_sequence_end() {
        let a = [0.0, 1.0, 1.0, 1.0, 1.0];
        assert_eq!(active_runs(&a, 0.5, 3), vec![(1, 4)]);
    }

    #[test]
    fn percentile_interpolates() {
        let xs = [4.0, 1.0, 3.0, 2.0, 5.0];
        assert_eq!(percentile(&xs, 50.0), 3.0);
        assert_eq!(percentile(&xs, 75.0), 4.0);
        assert_eq!(percentile(&[1.0, 2.0], 75.0), 1.75);
    }

    #[test]
    fn target_joint_policies() {
        let seq = fixtures::static_pose(30, 60.0);
        let all_limbs: Vec<usize> = [LEFT_LEG, RIGHT_LEG, LEFT_ARM, RIGHT_ARM].concat();
        let legs: Vec<usize> = [LEFT_LEG, RIGHT_LEG].concat();
        let arms: Vec<usize> = [LEFT_ARM, RIGHT_ARM].concat();
        assert_eq!(select_target_joints(Criterion::Footwork, &[], (0, 10), &seq, None), legs);
        assert_eq!(select_target_joints(Criterion::Density, &[], (0, 10), &seq, None), all_limbs);
        let trend = MotionTrend { joint: RIGHT_ARM[2], start: 2, end: 9, direction: [1, 0, 0] };
        assert_eq!(
            select_target_joints(Criterion::Density, &[trend], (0, 10), &seq, None),
            RIGHT_ARM.to_vec()
        );
        assert_eq!(select_target_joints(Criterion::Rotation, &[], (0, 10), &seq, None).len(), 24);
        assert_eq!(select_target_joints(Criterion::Asymmetry, &[], (0, 10), &seq, None), RIGHT_ARM.to_vec());
        let up = vec![1.0; 30];
        let low = vec![2.0; 30];
        assert_eq!(
            select_target_joints(Criterion::Coordination, &[], (0, 10), &seq, Some((&up, &low))),
            legs
        );
        assert_eq!(
            select_target_joints(Criterion::Coordination, &[], (0, 10), &seq, Some((&low, &up))),
            arms
        );
    }

    #[test]
    fn detected_intervals_are_sorted_disjoint_and_long_enough() {
        let seq = fixtures::random_dance(8, 240, 60.0);
        let w = MetricWeights::default();
        let p = compute_profile(&seq, &w).unwrap();
        for c in Criterion::ALL {
            let tau = percentile(p.activations.get(c), 75.0);
            let ivs = detect_intervals(&seq, &p, c, tau, 5, &[]).unwrap();
            for iv in &ivs {
                assert!(iv.end - iv.start >= 5);
                assert!(!iv.joints.is_empty());
            }
            for w in ivs.windows(2) {
                assert!(w[0].end < w[1].start);
            }
        }
    }
}
