//! Foot sliding and whole-body contact plausibility.

use crate::complexity::{estimate_contacts, ContactThresholds};
use crate::derivatives::DerivativeSet;
use crate::motion::{Contact, MotionSequence};
use crate::skeleton::{FEET, JOINT_COUNT};

fn contacts_of(seq: &MotionSequence) -> Vec<Contact> {
    seq.contacts()
        .map(<[Contact]>::to_vec)
        .unwrap_or_else(|| estimate_contacts(seq, ContactThresholds::default()))
}

/// Foot sliding: for each frame, the mean speed (m/s) of the foot joints
/// labelled in contact (0 when none are), averaged over frames and scaled by
/// 100. Planted feet that do not move give 0.
pub fn pfc(seq: &MotionSequence, deriv: &DerivativeSet) -> f64 {
    let contacts = contacts_of(seq);
    let total: f64 = contacts
        .iter()
        .enumerate()
        .map(|(t, c)| {
            let planted: Vec<usize> = (0..4).filter(|&i| c[i] == 1).map(|i| FEET[i]).collect();
            if planted.is_empty() {
                0.0
            } else {
                planted.iter().map(|&j| deriv.speed(t, j)).sum::<f64>() / planted.len() as f64
            }
        })
        .sum();
    100.0 * total / seq.frames() as f64
}

/// Whole-body contact term: per frame, the mean acceleration magnitude over
/// all joints, signed +1 while any foot supports the body and -1 in flight,
/// averaged over frames and reported relative to `calibration`.
pub fn pbc(seq: &MotionSequence, deriv: &DerivativeSet, calibration: f64) -> f64 {
    let contacts = contacts_of(seq);
    let total: f64 = contacts
        .iter()
        .enumerate()
        .map(|(t, c)| {
            let sign = if c.contains(&1) { 1.0 } else { -1.0 };
            let acc = (0..JOINT_COUNT).map(|j| crate::vec3::norm(deriv.acceleration(t, j))).sum::<f64>();
            sign * acc / JOINT_COUNT as f64
        })
        .sum();
    total / seq.frames() as f64 - calibration
}
