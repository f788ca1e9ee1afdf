//! Deterministic synthetic motion generators.
//!
//! Each generator targets one complexity criterion (or is a control) so
//! that metric behaviour can be checked against motion with a known shape.
//! All of them are pure functions of their arguments.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::MotionError;
use crate::motion::{Contact, MotionSequence};
use crate::skeleton::*;
use crate::vec3::{self, Vec3};

/// T-pose facing +Z, feet on the ground (foot joints at y = 0.02).
pub const REST_POSE: [Vec3; JOINT_COUNT] = [
    [0.0, 0.93, 0.0],
    [0.09, 0.84, 0.0],
    [-0.09, 0.84, 0.0],
    [0.0, 1.05, 0.0],
    [0.10, 0.48, 0.0],
    [-0.10, 0.48, 0.0],
    [0.0, 1.18, 0.0],
    [0.10, 0.06, 0.0],
    [-0.10, 0.06, 0.0],
    [0.0, 1.23, 0.0],
    [0.11, 0.02, 0.12],
    [-0.11, 0.02, 0.12],
    [0.0, 1.45, 0.0],
    [0.07, 1.38, 0.0],
    [-0.07, 1.38, 0.0],
    [0.0, 1.60, 0.03],
    [0.18, 1.40, 0.0],
    [-0.18, 1.40, 0.0],
    [0.44, 1.40, 0.0],
    [-0.44, 1.40, 0.0],
    [0.68, 1.40, 0.0],
    [-0.68, 1.40, 0.0],
    [0.76, 1.40, 0.0],
    [-0.76, 1.40, 0.0],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FixtureKind {
    Static,
    Walker,
    Spinner,
    Mirror,
    AsymmetricArms,
    Shaker,
    Slider,
    Desync,
    Random,
}

impl FixtureKind {
    pub const ALL: [FixtureKind; 9] = [
        FixtureKind::Static,
        FixtureKind::Walker,
        FixtureKind::Spinner,
        FixtureKind::Mirror,
        FixtureKind::AsymmetricArms,
        FixtureKind::Shaker,
        FixtureKind::Slider,
        FixtureKind::Desync,
        FixtureKind::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FixtureKind::Static => "static",
            FixtureKind::Walker => "walker",
            FixtureKind::Spinner => "spinner",
            FixtureKind::Mirror => "mirror",
            FixtureKind::AsymmetricArms => "asymmetric-arms",
            FixtureKind::Shaker => "shaker",
            FixtureKind::Slider => "slider",
            FixtureKind::Desync => "desync",
            FixtureKind::Random => "random",
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureKind {
    type Err = MotionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| MotionError::InvalidParameter(format!("unknown fixture kind {s:?}")))
    }
}

/// Generate a fixture with its default shape parameters.
pub fn generate(kind: FixtureKind, seed: u64, frames: usize, fps: f64) -> MotionSequence {
    match kind {
        FixtureKind::Static => static_pose(frames, fps),
        FixtureKind::Walker => walker(seed, frames, fps, 0.3),
        FixtureKind::Spinner => spinner(seed, frames, fps, TAU),
        FixtureKind::Mirror => mirror_arms(seed, frames, fps),
        FixtureKind::AsymmetricArms => asymmetric_arms(seed, frames, fps),
        FixtureKind::Shaker => shaker(seed, frames, fps),
        FixtureKind::Slider => slider(frames, fps, 0.5),
        FixtureKind::Desync => desync(seed, frames, fps, true),
        FixtureKind::Random => random_dance(seed, frames, fps),
    }
}

fn build(frames: Vec<Vec<Vec3>>, fps: f64, contacts: Option<Vec<Contact>>) -> MotionSequence {
    MotionSequence::new(frames, fps, contacts).expect("generators emit valid sequences")
}

fn rest_frame() -> Vec<Vec3> {
    REST_POSE.to_vec()
}

/// The rest pose held for every frame.
pub fn static_pose(frames: usize, fps: f64) -> MotionSequence {
    build(vec![rest_frame(); frames], fps, None)
}

/// Stepping gait along +Z with ground-truth foot contacts.
///
/// Each foot swings once per cycle, travelling `stride` metres forward with
/// a lift of a quarter stride; the pelvis advances at the mean foot speed.
/// Every foot velocity scales linearly with `stride`.
pub fn walker(seed: u64, frames: usize, fps: f64, stride: f64) -> MotionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = (0.6 * fps).round().max(4.0) as usize;
    let swing = ((0.7 * step as f64).round() as usize).max(2);
    let cycle = 2 * step;
    let offset = rng.random_range(0..cycle);
    let lift = 0.25 * stride;

    // Forward travel of one foot at time t, plus its lift and whether it is
    // mid-swing. `start` shifts the right foot half a cycle.
    let foot = |t: usize, start: usize| -> (f64, f64, bool) {
        let tt = t + offset + cycle - start;
        let done = (tt / cycle) as f64;
        let phase = tt % cycle;
        if phase < swing {
            let u = phase as f64 / swing as f64;
            (stride * (done + u), lift * (std::f64::consts::PI * u).sin(), true)
        } else {
            (stride * (done + 1.0), 0.0, false)
        }
    };

    let mut out = Vec::with_capacity(frames);
    let mut contacts = Vec::with_capacity(frames);
    let (l0, _, _) = foot(0, 0);
    let (r0, _, _) = foot(0, step);
    for t in 0..frames {
        let (lz, ly, lswing) = foot(t, 0);
        let (rz, ry, rswing) = foot(t, step);
        let body = 0.5 * (lz - l0 + rz - r0);
        let mut f = rest_frame();
        for (j, p) in f.iter_mut().enumerate() {
            let (dz, dy) = match j {
                LEFT_ANKLE | LEFT_FOOT => (lz - l0, ly),
                RIGHT_ANKLE | RIGHT_FOOT => (rz - r0, ry),
                _ => (body, 0.0),
            };
            p[1] += dy;
            p[2] += dz;
        }
        out.push(f);
        let (l, r) = (u8::from(!lswing), u8::from(!rswing));
        contacts.push([l, l, r, r]);
    }
    build(out, fps, Some(contacts))
}

/// Rest pose turning uniformly about the pelvis by `total_turn` radians over
/// the clip, with symmetric arm swing whose phase depends on `seed`.
pub fn spinner(seed: u64, frames: usize, fps: f64, total_turn: f64) -> MotionSequence {
    let phase = (seed % 360) as f64 * TAU / 360.0;
    let pelvis = REST_POSE[PELVIS];
    let out = (0..frames)
        .map(|t| {
            let yaw = total_turn * t as f64 / (frames - 1).max(1) as f64;
            let swing = 0.05 * (TAU * 1.0 * t as f64 / fps + phase).sin();
            rest_frame()
                .into_iter()
                .enumerate()
                .map(|(j, mut p)| {
                    if [LEFT_WRIST, RIGHT_WRIST, LEFT_HAND, RIGHT_HAND].contains(&j) {
                        p[1] += swing;
                    }
                    vec3::add(vec3::rotate_y(vec3::sub(p, pelvis), yaw), pelvis)
                })
                .collect()
        })
        .collect();
    build(out, fps, None)
}

/// Arms moving as exact mirror images while the body travels along +Z.
pub fn mirror_arms(seed: u64, frames: usize, fps: f64) -> MotionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let waves: Vec<[(f64, f64, f64); 3]> = (0..JOINT_COUNT)
        .map(|_| {
            let mut w = [(0.0, 0.0, 0.0); 3];
            for a in &mut w {
                *a = (rng.random_range(0.02..0.12), rng.random_range(0.5..2.5), rng.random_range(0.0..TAU));
            }
            w
        })
        .collect();
    let arms = [LEFT_ELBOW, LEFT_WRIST, LEFT_HAND, LEFT_SHOULDER];
    let sk = SkeletonSpec::SMPL24;
    let out = (0..frames)
        .map(|t| {
            let time = t as f64 / fps;
            let travel = [0.0, 0.02 * (TAU * time).sin(), 0.4 * time];
            let mut f = rest_frame();
            for &l in &arms {
                let r = sk.mirror_joint(l);
                let d: Vec3 = std::array::from_fn(|a| {
                    let (amp, freq, ph) = waves[l][a];
                    amp * (TAU * freq * time + ph).sin()
                });
                f[l] = vec3::add(f[l], d);
                f[r] = [-f[l][0], f[l][1], f[l][2]];
            }
            f.into_iter().map(|p| vec3::add(p, travel)).collect()
        })
        .collect();
    build(out, fps, None)
}

/// Only the right arm moves; every left-side joint is perfectly still.
pub fn asymmetric_arms(seed: u64, frames: usize, fps: f64) -> MotionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freq = rng.random_range(0.8..2.0);
    let phase = rng.random_range(0.0..TAU);
    let out = (0..frames)
        .map(|t| {
            let time = t as f64 / fps;
            let mut f = rest_frame();
            for (k, &j) in [RIGHT_ELBOW, RIGHT_WRIST, RIGHT_HAND].iter().enumerate() {
                let amp = 0.1 * (k + 1) as f64;
                f[j][1] += amp * (TAU * freq * time + phase).sin();
                f[j][2] += 0.5 * amp * (TAU * freq * time + phase).cos();
            }
            f
        })
        .collect();
    build(out, fps, None)
}

/// Rapid small-amplitude jitter on every limb joint.
pub fn shaker(seed: u64, frames: usize, fps: f64) -> MotionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = (0..frames)
        .map(|_| {
            let mut f = rest_frame();
            for &j in &LIMBS {
                for a in 0..3 {
                    f[j][a] += rng.random_range(-0.03..0.03);
                }
            }
            f
        })
        .collect();
    build(out, fps, None)
}

/// Whole body gliding along +X at `speed` m/s while labelled as planted.
pub fn slider(frames: usize, fps: f64, speed: f64) -> MotionSequence {
    let out = (0..frames)
        .map(|t| {
            let dx = speed * t as f64 / fps;
            rest_frame().into_iter().map(|p| [p[0] + dx, p[1], p[2]]).collect()
        })
        .collect();
    build(out, fps, Some(vec![[1; 4]; frames]))
}

/// Vertical oscillation of both body halves in half-second blocks.
///
/// With `desynchronized` the halves alternate between large and small
/// amplitude in opposite phase; otherwise both follow the same envelope.
pub fn desync(seed: u64, frames: usize, fps: f64, desynchronized: bool) -> MotionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let freq = rng.random_range(1.5..2.5);
    let block = ((0.5 * fps).round() as usize).max(1);
    let out = (0..frames)
        .map(|t| {
            let time = t as f64 / fps;
            let even = (t / block) % 2 == 0;
            let (hi, lo) = (0.10, 0.02);
            let upper = if even { hi } else { lo };
            let lower = match (desynchronized, even) {
                (false, _) => upper,
                (true, true) => lo,
                (true, false) => hi,
            };
            let s = (TAU * freq * time).sin();
            let mut f = rest_frame();
            for &j in &UPPER {
                f[j][1] += upper * s;
            }
            for &j in &LOWER {
                f[j][1] += lower * s;
            }
            f
        })
        .collect();
    build(out, fps, None)
}

/// Smooth random full-body motion: travelling, turning pelvis with every
/// joint oscillating around its rest offset, plus a little noise. A slow
/// phrase envelope alternates bursts with calmer passages.
pub fn random_dance(seed: u64, frames: usize, fps: f64) -> MotionSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // (amplitude, Hz, phase). Travel and turning are slow; limbs move at
    // dance tempo.
    let mut wave = |amp: f64, hz: std::ops::Range<f64>| {
        (amp * rng.random_range(0.1..1.0), rng.random_range(hz), rng.random_range(0.0..TAU))
    };
    let travel: Vec<_> = (0..3)
        .map(|a| [wave(if a == 1 { 0.05 } else { 0.6 }, 0.1..0.6), wave(0.2, 0.2..1.0)])
        .collect();
    let turn = [wave(1.5, 0.1..0.6), wave(0.4, 0.2..1.0)];
    let drift: f64 = wave(3.0, 0.0..1.0).0;
    let local: Vec<Vec<[(f64, f64, f64); 2]>> = (0..JOINT_COUNT)
        .map(|j| {
            let amp = if j == PELVIS { 0.0 } else if [LEFT_HIP, RIGHT_HIP].contains(&j) { 0.03 } else { 0.15 };
            (0..3).map(|_| [wave(amp, 0.5..2.5), wave(amp * 0.5, 0.5..2.5)]).collect()
        })
        .collect();
    let phrase = (rng.random_range(0.2..0.6), rng.random_range(0.0..TAU));
    let eval = |w: &[(f64, f64, f64)], time: f64| -> f64 {
        w.iter().map(|&(a, f, p)| a * (TAU * f * time + p).sin()).sum()
    };
    let envelope = |time: f64| 0.575 + 0.425 * (TAU * phrase.0 * time + phrase.1).sin();

    let pelvis = REST_POSE[PELVIS];
    let mut noise = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let out = (0..frames)
        .map(|t| {
            let time = t as f64 / fps;
            let e = envelope(time);
            let root: Vec3 = std::array::from_fn(|a| pelvis[a] + e * eval(&travel[a], time));
            let yaw = e * eval(&turn, time) + drift * t as f64 / frames as f64;
            (0..JOINT_COUNT)
                .map(|j| {
                    let off: Vec3 = std::array::from_fn(|a| {
                        REST_POSE[j][a] - pelvis[a] + e * eval(&local[j][a], time) + noise.random_range(-1e-3..1e-3)
                    });
                    let off = if j == PELVIS { [0.0; 3] } else { off };
                    vec3::add(root, vec3::rotate_y(off, yaw))
                })
                .collect()
        })
        .collect();
    build(out, fps, None)
}
