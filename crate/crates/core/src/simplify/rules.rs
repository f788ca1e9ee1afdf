//! The four simplification rules. Each works interval by interval on a
//! fresh copy of the current sequence; the `*_steps` functions are the raw
//! edits before reattachment and boundary smoothing.

use serde::{Deserialize, Serialize};

use super::post::post_process;
use crate::intervals::ComplexInterval;
use crate::motion::MotionSequence;
use crate::skeleton::PELVIS;
use crate::vec3::{self, Vec3};

/// Yaw the body should face inside an orientation-stabilised interval.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PsiTarget {
    /// Pelvis yaw at the first frame of each interval.
    #[default]
    FirstFrame,
    /// Fixed yaw in radians.
    Radians(f64),
}

impl Serialize for PsiTarget {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PsiTarget::FirstFrame => s.serialize_str("first-frame"),
            PsiTarget::Radians(r) => s.serialize_f64(*r),
        }
    }
}

impl<'de> Deserialize<'de> for PsiTarget {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Name(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(r) => Ok(PsiTarget::Radians(r)),
            Raw::Name(n) if n == "first-frame" => Ok(PsiTarget::FirstFrame),
            Raw::Name(n) => Err(serde::de::Error::custom(format!(
                "psi_target must be a number or \"first-frame\", got {n:?}"
            ))),
        }
    }
}

impl std::str::FromStr for PsiTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "first-frame" {
            return Ok(PsiTarget::FirstFrame);
        }
        s.parse::<f64>()
            .map(PsiTarget::Radians)
            .map_err(|_| format!("expected radians or \"first-frame\", got {s:?}"))
    }
}

/// Scale every frame-to-frame step of `joints` in `start..=end` by `k`,
/// anchored at `start`.
pub fn compress_steps(src: &MotionSequence, joints: &[usize], start: usize, end: usize, k: f64) -> MotionSequence {
    let mut gen = src.clone();
    for &j in joints {
        for t in start + 1..=end {
            let step = vec3::sub(src.pos(t, j), src.pos(t - 1, j));
            gen.set_pos(t, j, vec3::add(gen.pos(t - 1, j), vec3::scale(step, k)));
        }
    }
    gen
}

/// Time-stretch `joints` over `start..=end` by the integer factor `lambda`,
/// writing frames `start..=start + (end - start) * lambda` in place. `None`
/// when the stretched end falls outside the sequence.
pub fn stretch_steps(src: &MotionSequence, joints: &[usize], start: usize, end: usize, lambda: usize) -> Option<MotionSequence> {
    let new_end = start + (end - start) * lambda;
    if new_end >= src.frames() {
        return None;
    }
    let mut gen = src.clone();
    for &j in joints {
        for k in 0..end - start {
            let a = src.pos(start + k, j);
            let step = vec3::sub(src.pos(start + k + 1, j), a);
            for i in 0..lambda {
                let f = start + k * lambda + i;
                gen.set_pos(f, j, vec3::add(a, vec3::scale(step, i as f64 / lambda as f64)));
            }
        }
        gen.set_pos(new_end, j, src.pos(end, j));
    }
    Some(gen)
}

/// Re-integrate the steps of `joints` over `start..=end` with the axes in
/// `flip` negated.
pub fn flip_steps(src: &MotionSequence, joints: &[usize], start: usize, end: usize, flip: [i8; 3]) -> MotionSequence {
    let v: Vec3 = flip.map(f64::from);
    let mut gen = src.clone();
    for &j in joints {
        let anchor = src.pos(start, j);
        let mut acc = [0.0; 3];
        for t in start + 1..=end {
            let step = vec3::sub(src.pos(t, j), src.pos(t - 1, j));
            acc = vec3::add(acc, vec3::mul(v, step));
            gen.set_pos(t, j, vec3::add(anchor, acc));
        }
    }
    gen
}

/// Distance compression (density and coordination).
pub fn distance_compression(seq: &MotionSequence, intervals: &[ComplexInterval], k: f64) -> MotionSequence {
    let mut gen = seq.clone();
    for iv in intervals {
        let src = gen;
        gen = compress_steps(&src, &iv.joints, iv.start, iv.end, k);
        post_process(&src, &mut gen, &iv.joints, iv.start, iv.end);
    }
    gen
}

/// Velocity reduction (footwork). Intervals whose stretched end would leave
/// the sequence are skipped.
pub fn velocity_reduction(seq: &MotionSequence, intervals: &[ComplexInterval], lambda: usize) -> MotionSequence {
    let mut gen = seq.clone();
    for iv in intervals {
        let Some(mut next) = stretch_steps(&gen, &iv.joints, iv.start, iv.end, lambda) else {
            continue;
        };
        let new_end = iv.start + (iv.end - iv.start) * lambda;
        post_process(&gen, &mut next, &iv.joints, iv.start, new_end);
        gen = next;
    }
    gen
}

/// Directional change (asymmetry) with one flip vector for every interval.
pub fn directional_change(seq: &MotionSequence, intervals: &[ComplexInterval], flip: [i8; 3]) -> MotionSequence {
    let mut gen = seq.clone();
    for iv in intervals {
        let src = gen;
        gen = flip_steps(&src, &iv.joints, iv.start, iv.end, flip);
        post_process(&src, &mut gen, &iv.joints, iv.start, iv.end);
    }
    gen
}

/// Rotate the whole skeleton about the pelvis in every interval frame so the
/// pelvis faces the target yaw.
pub fn orientation_stabilization(seq: &MotionSequence, intervals: &[ComplexInterval], target: PsiTarget) -> MotionSequence {
    let mut gen = seq.clone();
    for iv in intervals {
        let psi = match target {
            PsiTarget::FirstFrame => gen.pelvis_yaw(iv.start),
            PsiTarget::Radians(r) => r,
        };
        let yaws = gen.yaw_series();
        for f in iv.start..=iv.end.min(gen.frames() - 1) {
            let theta = psi - yaws[f];
            let p = gen.pos(f, PELVIS);
            for q in gen.frame_mut(f) {
                *q = vec3::add(vec3::rotate_y(vec3::sub(*q, p), theta), p);
            }
        }
    }
    gen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::Criterion;
    use crate::fixtures;
    use crate::skeleton::LEFT_WRIST;

    fn ramp(xs: &[f64]) -> MotionSequence {
        let frames = xs
            .iter()
            .map(|&x| {
                let mut f = fixtures::REST_POSE.to_vec();
                f[LEFT_WRIST] = [x, 1.4, 0.0];
                f
            })
            .collect();
        MotionSequence::new(frames, 60.0, None).unwrap()
    }

    fn x(seq: &MotionSequence) -> Vec<f64> {
        (0..seq.frames()).map(|t| seq.pos(t, LEFT_WRIST)[0]).collect()
    }

    #[test]
    fn stretch_hand_trace() {
        let seq = ramp(&[0.0, 1.0, 2.0, 7.0, 7.0, 7.0]);
        let out = stretch_steps(&seq, &[LEFT_WRIST], 0, 2, 2).unwrap();
        assert_eq!(x(&out)[..5], [0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!(stretch_steps(&seq, &[LEFT_WRIST], 0, 3, 2).is_none());
    }

    #[test]
    fn compress_halves_a_straight_path() {
        let xs: Vec<f64> = (0..=10).map(|i| 0.2 * i as f64).collect();
        let out = compress_steps(&ramp(&xs), &[LEFT_WRIST], 0, 10, 0.5);
        assert!((x(&out)[10] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flip_negates_a_ramp() {
        let xs: Vec<f64> = (0..=10).map(|i| 0.1 * i as f64).collect();
        let out = flip_steps(&ramp(&xs), &[LEFT_WRIST], 0, 10, [-1, 1, 1]);
        assert!((x(&out)[10] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn stabilization_hits_target_yaw() {
        let seq = fixtures::spinner(0, 60, 60.0, std::f64::consts::PI);
        let iv = ComplexInterval { criterion: Criterion::Rotation, start: 10, end: 50, joints: vec![] };
        let out = orientation_stabilization(&seq, &[iv], PsiTarget::Radians(0.4));
        for f in 10..=50 {
            assert!((out.pelvis_yaw(f) - 0.4).abs() < 1e-6);
        }
        assert_eq!(out.frame(9), seq.frame(9));
    }

    #[test]
    fn psi_target_parses() {
        assert_eq!("first-frame".parse::<PsiTarget>().unwrap(), PsiTarget::FirstFrame);
        assert_eq!("0.5".parse::<PsiTarget>().unwrap(), PsiTarget::Radians(0.5));
        assert!("north".parse::<PsiTarget>().is_err());
        let j = serde_json::to_string(&PsiTarget::FirstFrame).unwrap();
        assert_eq!(serde_json::from_str::<PsiTarget>(&j).unwrap(), PsiTarget::FirstFrame);
        assert_eq!(serde_json::from_str::<PsiTarget>("1.25").unwrap(), PsiTarget::Radians(1.25));
    }
}
