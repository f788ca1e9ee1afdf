//! Monotonic motion events.
//!
//! A joint's per-axis position signal is cut into maximal runs where every
//! frame-to-frame step exceeds `epsilon` in the same direction. Axis runs of
//! the same joint that overlap enough in time are then merged into 3D
//! trends with a sweep over start-sorted intervals.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::motion::MotionSequence;
use crate::skeleton::JOINT_COUNT;

/// Default jitter threshold (m per frame).
pub const DEFAULT_EPSILON: f64 = 0.2;
/// Default overlap ratio needed to merge two trends.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// `start..=end` frame span of one joint moving monotonically. `direction`
/// holds per-axis summed sign indicators; consumers should use only the
/// signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MotionTrend {
    pub joint: usize,
    pub start: usize,
    pub end: usize,
    pub direction: [i32; 3],
}

impl MotionTrend {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Length of the intersection of two closed spans (0 when they only touch
/// or are disjoint).
pub fn intersection(a: (usize, usize), b: (usize, usize)) -> usize {
    a.1.min(b.1).saturating_sub(a.0.max(b.0))
}

/// `|A ∩ B| / min(|A|, |B|)`, zero when either span is empty.
pub fn overlap_ratio(a: (usize, usize), b: (usize, usize)) -> f64 {
    let shorter = (a.1 - a.0).min(b.1 - b.0);
    if shorter == 0 {
        return 0.0;
    }
    intersection(a, b) as f64 / shorter as f64
}

fn sign_eps(d: f64, epsilon: f64) -> i32 {
    if d >= epsilon {
        1
    } else if d <= -epsilon {
        -1
    } else {
        0
    }
}

/// Single-axis trends of one joint, sorted by start. Consecutive trends
/// share at most their boundary frame.
pub fn detect_axis_trends(seq: &MotionSequence, joint: usize, axis: usize, epsilon: f64) -> Vec<MotionTrend> {
    let signs: Vec<i32> = (0..seq.frames() - 1)
        .map(|t| sign_eps(seq.pos(t + 1, joint)[axis] - seq.pos(t, joint)[axis], epsilon))
        .collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < signs.len() {
        let s = signs[t];
        if s == 0 {
            t += 1;
            continue;
        }
        let start = t;
        while t < signs.len() && signs[t] == s {
            t += 1;
        }
        let mut direction = [0; 3];
        direction[axis] = s;
        // The run covers steps start..t-1, i.e. frames start..=t.
        out.push(MotionTrend { joint, start, end: t, direction });
    }
    out
}

/// Detect and merge trends for every joint.
pub fn detect_trends(seq: &MotionSequence, epsilon: f64, alpha: f64) -> Vec<MotionTrend> {
    let mut axis_trends = Vec::new();
    for joint in 0..JOINT_COUNT {
        for axis in 0..3 {
            axis_trends.extend(detect_axis_trends(seq, joint, axis, epsilon));
        }
    }
    merge_trends(&axis_trends, alpha)
}

/// Merge temporally overlapping trends of the same joint.
///
/// Two trends merge when their overlap ratio is at least `alpha`; a merged
/// trend spans the union and sums the direction vectors. Merging repeats
/// until no pair qualifies, so the result does not depend on input order
/// and merging it again changes nothing. Trends whose summed direction
/// cancels to zero are dropped. Output is sorted by (joint, start, end).
pub fn merge_trends(trends: &[MotionTrend], alpha: f64) -> Vec<MotionTrend> {
    let mut by_joint: BTreeMap<usize, Vec<MotionTrend>> = BTreeMap::new();
    for t in trends {
        by_joint.entry(t.joint).or_default().push(*t);
    }
    let mut out = Vec::new();
    for (_, mut group) in by_joint {
        loop {
            let before = group.len();
            group = sweep_merge(group, alpha);
            if group.len() == before {
                break;
            }
        }
        out.extend(group.into_iter().filter(|t| t.direction != [0; 3]));
    }
    out.sort();
    out
}

/// One round: link every qualifying pair found by the sweep, then collapse
/// each connected component.
fn sweep_merge(mut items: Vec<MotionTrend>, alpha: f64) -> Vec<MotionTrend> {
    items.sort();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    let mut active: Vec<usize> = Vec::new();
    for i in 0..items.len() {
        let cur = (items[i].start, items[i].end);
        // Later items start no earlier than this one, so anything ending at
        // or before `cur.0` can never overlap again.
        active.retain(|&a| items[a].end > cur.0);
        for &a in &active {
            if overlap_ratio((items[a].start, items[a].end), cur) >= alpha {
                union(&mut parent, a, i);
            }
        }
        active.push(i);
    }

    let mut merged: BTreeMap<usize, MotionTrend> = BTreeMap::new();
    for (i, t) in items.iter().enumerate() {
        let root = find(&mut parent, i);
        merged
            .entry(root)
            .and_modify(|m| {
                m.start = m.start.min(t.start);
                m.end = m.end.max(t.end);
                for a in 0..3 {
                    m.direction[a] += t.direction[a];
                }
            })
            .or_insert(*t);
    }
    merged.into_values().collect()
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::vec3::Vec3;

    fn track(xs: &[f64]) -> MotionSequence {
        let frames: Vec<Vec<Vec3>> = xs
            .iter()
            .map(|&x| {
                let mut f = fixtures::REST_POSE.to_vec();
                f[20][0] += x;
                f
            })
            .collect();
        MotionSequence::new(frames, 60.0, None).unwrap()
    }

    fn t(joint: usize, start: usize, end: usize, direction: [i32; 3]) -> MotionTrend {
        MotionTrend { joint, start, end, direction }
    }

    #[test]
    fn monotone_ramp_is_one_trend() {
        let xs: Vec<f64> = (0..10).map(|i| 0.3 * i as f64).collect();
        let got = detect_axis_trends(&track(&xs), 20, 0, 0.2);
        assert_eq!(got, vec![t(20, 0, 9, [1, 0, 0])]);
    }

    #[test]
    fn jitter_below_epsilon_is_ignored() {
        let xs: Vec<f64> = (0..20).map(|i| if i % 2 == 0 { 0.05 } else { -0.05 } * 0.9).collect();
        assert!(detect_axis_trends(&track(&xs), 20, 0, 0.2).is_empty());
    }

    #[test]
    fn triangle_wave_gives_opposite_trends() {
        // Up for five frames, then down for five.
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0, 0.0, -1.0];
        let got = detect_axis_trends(&track(&xs), 20, 0, 0.2);
        assert_eq!(got, vec![t(20, 0, 4, [1, 0, 0]), t(20, 4, 9, [-1, 0, 0])]);
    }

    #[test]
    fn identical_spans_merge() {
        let got = merge_trends(&[t(3, 5, 15, [1, 0, 0]), t(3, 5, 15, [0, 0, 1])], 0.5);
        assert_eq!(got, vec![t(3, 5, 15, [1, 0, 1])]);
    }

    #[test]
    fn disjoint_trends_pass_through() {
        let input = [t(3, 0, 5, [1, 0, 0]), t(3, 10, 15, [0, 1, 0]), t(4, 0, 5, [0, 0, -1])];
        assert_eq!(merge_trends(&input, 0.5), input.to_vec());
    }

    #[test]
    fn different_joints_never_merge() {
        let input = [t(3, 0, 10, [1, 0, 0]), t(4, 0, 10, [0, 1, 0])];
        assert_eq!(merge_trends(&input, 0.5).len(), 2);
    }

    #[test]
    fn overlap_below_alpha_stays_apart() {
        // Overlap 2 of min length 10.
        let input = [t(0, 0, 10, [1, 0, 0]), t(0, 8, 18, [0, 1, 0])];
        assert_eq!(merge_trends(&input, 0.5).len(), 2);
        assert_eq!(merge_trends(&input, 0.2), vec![t(0, 0, 18, [1, 1, 0])]);
    }

    #[test]
    fn cancelled_direction_is_dropped() {
        let input = [
            t(0, 0, 10, [1, 0, 0]),
            t(0, 5, 15, [0, 0, 1]),
            t(0, 10, 20, [-1, 0, 0]),
            t(0, 15, 25, [0, 0, -1]),
        ];
        assert!(merge_trends(&input, 0.5).is_empty());
    }

    #[test]
    fn ratio_helpers() {
        assert_eq!(intersection((0, 4), (4, 8)), 0);
        assert_eq!(overlap_ratio((0, 10), (5, 7)), 1.0);
        assert_eq!(overlap_ratio((3, 3), (0, 10)), 0.0);
    }
}
