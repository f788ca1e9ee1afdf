use super::{mean, ContactThresholds, CriterionOutput, MetricWeights};
use crate::derivatives::DerivativeSet;
use crate::motion::{Contact, MotionSequence};
use crate::skeleton::{FEET, LEFT_FOOT, RIGHT_FOOT};
use crate::vec3;

/// Shannon entropy (nats) of a histogram of `values` with `bins` uniform
/// bins spanning `[min, max]`. A constant series occupies a single bin and
/// has zero entropy.
pub fn entropy(values: &[f64], bins: usize) -> f64 {
    if values.is_empty() || bins == 0 {
        return 0.0;
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if !(span > 0.0) {
        return 0.0;
    }
    let mut counts = vec![0usize; bins];
    for &v in values {
        let k = (((v - lo) / span) * bins as f64).floor() as usize;
        counts[k.min(bins - 1)] += 1;
    }
    let n = values.len() as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Bounding-box diagonal of a point set projected onto the ground plane.
pub fn horizontal_range(points: impl IntoIterator<Item = vec3::Vec3>) -> f64 {
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_z, mut max_z) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut any = false;
    for p in points {
        any = true;
        min_x = min_x.min(p[0]);
        max_x = max_x.max(p[0]);
        min_z = min_z.min(p[2]);
        max_z = max_z.max(p[2]);
    }
    if !any {
        return 0.0;
    }
    (max_x - min_x).hypot(max_z - min_z)
}

/// Label a foot joint as planted when it is both slow and near the ground.
///
/// Speed is the forward-difference speed in m/s; the ground is the lowest Y
/// reached by any of the four foot joints over the whole sequence.
pub fn estimate_contacts(seq: &MotionSequence, thresholds: ContactThresholds) -> Vec<Contact> {
    let n = seq.frames();
    let ground = (0..n)
        .flat_map(|t| FEET.iter().map(move |&j| seq.pos(t, j)[1]))
        .fold(f64::INFINITY, f64::min);
    (0..n)
        .map(|t| {
            let tv = if t + 1 < n { t } else { t - 1 };
            let mut row = [0u8; 4];
            for (k, &j) in FEET.iter().enumerate() {
                let speed = vec3::dist(seq.pos(tv + 1, j), seq.pos(tv, j)) * seq.fps();
                let height = seq.pos(t, j)[1] - ground;
                row[k] = (speed < thresholds.velocity && height < thresholds.height) as u8;
            }
            row
        })
        .collect()
}

/// Steps-and-footwork score.
pub fn compute_c1(seq: &MotionSequence, deriv: &DerivativeSet, weights: &MetricWeights) -> f64 {
    footwork(seq, deriv, weights).score
}

pub(super) fn footwork(seq: &MotionSequence, deriv: &DerivativeSet, weights: &MetricWeights) -> CriterionOutput {
    let n = seq.frames();
    let w = weights.c1;

    let right: Vec<f64> = (0..n).map(|t| deriv.speed(t, RIGHT_FOOT)).collect();
    let left: Vec<f64> = (0..n).map(|t| deriv.speed(t, LEFT_FOOT)).collect();
    let activation: Vec<f64> = right.iter().zip(&left).map(|(r, l)| r + l).collect();
    let mean_speed = mean(activation.iter().copied());

    let pooled: Vec<f64> = right.iter().chain(&left).copied().collect();
    let h = entropy(&pooled, weights.entropy_bins);

    let range = [RIGHT_FOOT, LEFT_FOOT]
        .iter()
        .map(|&j| horizontal_range((0..n).map(|t| seq.pos(t, j))))
        .fold(0.0, f64::max);

    let estimated;
    let contacts = match seq.contacts() {
        Some(c) => c,
        None => {
            estimated = estimate_contacts(seq, weights.contacts);
            &estimated
        }
    };
    let transitions = contacts.windows(2).filter(|w| w[0] != w[1]).count();
    let rate = transitions as f64 / n as f64;

    CriterionOutput {
        score: mean_speed + w.alpha1 * h + w.alpha2 * range + w.alpha3 * rate,
        activation,
    }
}
