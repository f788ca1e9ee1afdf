use crate::error::{MotionError, Result};
use crate::motion::MotionSequence;
use crate::savgol::{self, SavGolParams};
use crate::skeleton::JOINT_COUNT;
use crate::vec3::{self, Vec3};

/// Linear velocity, filtered velocity and acceleration for every joint and
/// frame, all in SI units and all of length F.
///
/// * `velocity[t] = (pos[t+1] - pos[t]) * fps`, with the last row repeated.
/// * `filtered_velocity` is the per-axis Savitzky-Golay smoothing of
///   `velocity`.
/// * `acceleration[t] = (fv[t+1] - 2 fv[t] + fv[t-1]) * fps` on the filtered
///   velocity; the two boundary rows copy their interior neighbour.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSet {
    frames: usize,
    velocity: Vec<Vec3>,
    filtered_velocity: Vec<Vec3>,
    acceleration: Vec<Vec3>,
}

impl DerivativeSet {
    pub fn frames(&self) -> usize {
        self.frames
    }

    #[inline]
    pub fn velocity(&self, t: usize, j: usize) -> Vec3 {
        self.velocity[t * JOINT_COUNT + j]
    }

    #[inline]
    pub fn filtered_velocity(&self, t: usize, j: usize) -> Vec3 {
        self.filtered_velocity[t * JOINT_COUNT + j]
    }

    #[inline]
    pub fn acceleration(&self, t: usize, j: usize) -> Vec3 {
        self.acceleration[t * JOINT_COUNT + j]
    }

    #[inline]
    pub fn speed(&self, t: usize, j: usize) -> f64 {
        vec3::norm(self.velocity(t, j))
    }

    #[inline]
    pub fn filtered_speed(&self, t: usize, j: usize) -> f64 {
        vec3::norm(self.filtered_velocity(t, j))
    }
}

/// Derivatives with a strict filter contract: `window` odd,
/// `window > order >= 1` and `F >= window`.
pub fn derivatives(seq: &MotionSequence, sg: SavGolParams) -> Result<DerivativeSet> {
    sg.validate()?;
    if seq.frames() < sg.window {
        return Err(MotionError::InvalidParameter(format!(
            "sequence has {} frames, shorter than savgol window {}",
            seq.frames(),
            sg.window
        )));
    }
    derivatives_adaptive(seq, sg)
}

/// Like [`derivatives`] but shrinks the filter window on short sequences.
pub fn derivatives_adaptive(seq: &MotionSequence, sg: SavGolParams) -> Result<DerivativeSet> {
    sg.validate()?;
    let n = seq.frames();
    let fps = seq.fps();

    let mut velocity = Vec::with_capacity(n * JOINT_COUNT);
    for t in 0..n - 1 {
        for j in 0..JOINT_COUNT {
            velocity.push(vec3::scale(vec3::sub(seq.pos(t + 1, j), seq.pos(t, j)), fps));
        }
    }
    velocity.extend_from_within((n - 2) * JOINT_COUNT..(n - 1) * JOINT_COUNT);

    let mut filtered_velocity = vec![[0.0; 3]; n * JOINT_COUNT];
    let mut series = vec![0.0; n];
    for j in 0..JOINT_COUNT {
        for axis in 0..3 {
            for (t, s) in series.iter_mut().enumerate() {
                *s = velocity[t * JOINT_COUNT + j][axis];
            }
            let smoothed = savgol::smooth_adaptive(sg, &series)?;
            for (t, v) in smoothed.into_iter().enumerate() {
                filtered_velocity[t * JOINT_COUNT + j][axis] = v;
            }
        }
    }

    let mut acceleration = vec![[0.0; 3]; n * JOINT_COUNT];
    if n >= 3 {
        for t in 1..n - 1 {
            for j in 0..JOINT_COUNT {
                let prev = filtered_velocity[(t - 1) * JOINT_COUNT + j];
                let cur = filtered_velocity[t * JOINT_COUNT + j];
                let next = filtered_velocity[(t + 1) * JOINT_COUNT + j];
                let second = vec3::add(vec3::sub(next, vec3::scale(cur, 2.0)), prev);
                acceleration[t * JOINT_COUNT + j] = vec3::scale(second, fps);
            }
        }
        acceleration.copy_within(JOINT_COUNT..2 * JOINT_COUNT, 0);
        acceleration.copy_within((n - 2) * JOINT_COUNT..(n - 1) * JOINT_COUNT, (n - 1) * JOINT_COUNT);
    }

    Ok(DerivativeSet { frames: n, velocity, filtered_velocity, acceleration })
}
