use crate::error::{MotionError, Result};
use crate::skeleton::{self, SkeletonSpec, JOINT_COUNT};
use crate::vec3::{self, Vec3};

/// Foot contact flags for one frame, in [`skeleton::FEET`] order.
pub type Contact = [u8; 4];

/// World-space joint positions for F frames of the SMPL-24 skeleton.
///
/// Positions are stored frame-major: joint `j` of frame `t` lives at
/// `t * 24 + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionSequence {
    positions: Vec<Vec3>,
    frames: usize,
    fps: f64,
    contacts: Option<Vec<Contact>>,
}

impl MotionSequence {
    /// Build a sequence from per-frame joint lists, validating every
    /// invariant.
    pub fn new(frames: Vec<Vec<Vec3>>, fps: f64, contacts: Option<Vec<Contact>>) -> Result<Self> {
        let count = frames.len();
        let mut positions = Vec::with_capacity(count * JOINT_COUNT);
        for (t, frame) in frames.into_iter().enumerate() {
            if frame.len() != JOINT_COUNT {
                return Err(MotionError::Shape(format!(
                    "frame {t} has {} joints, expected {JOINT_COUNT}",
                    frame.len()
                )));
            }
            positions.extend(frame);
        }
        Self::from_flat(positions, count, fps, contacts)
    }

    pub fn from_flat(
        positions: Vec<Vec3>,
        frames: usize,
        fps: f64,
        contacts: Option<Vec<Contact>>,
    ) -> Result<Self> {
        if frames < 2 {
            return Err(MotionError::Shape(format!("need at least 2 frames, got {frames}")));
        }
        if positions.len() != frames * JOINT_COUNT {
            return Err(MotionError::Shape(format!(
                "expected {} joint positions, got {}",
                frames * JOINT_COUNT,
                positions.len()
            )));
        }
        if !(fps.is_finite() && fps > 0.0) {
            return Err(MotionError::InvalidParameter(format!("fps must be positive, got {fps}")));
        }
        if let Some(i) = positions.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(MotionError::NonFinite { frame: i / JOINT_COUNT, joint: i % JOINT_COUNT });
        }
        if let Some(c) = &contacts {
            if c.len() != frames {
                return Err(MotionError::Shape(format!(
                    "contacts have {} rows, expected {frames}",
                    c.len()
                )));
            }
            if c.iter().flatten().any(|&v| v > 1) {
                return Err(MotionError::Shape("contact entries must be 0 or 1".into()));
            }
        }
        Ok(Self { positions, frames, fps, contacts })
    }

    pub fn frames(&self) -> usize {
        self.frames
    }

    pub fn joints(&self) -> usize {
        JOINT_COUNT
    }

    pub fn fps(&self) -> f64 {
        self.fps
    }

    pub fn skeleton(&self) -> SkeletonSpec {
        SkeletonSpec::SMPL24
    }

    pub fn contacts(&self) -> Option<&[Contact]> {
        self.contacts.as_deref()
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    #[inline]
    pub fn pos(&self, t: usize, j: usize) -> Vec3 {
        self.positions[t * JOINT_COUNT + j]
    }

    #[inline]
    pub fn set_pos(&mut self, t: usize, j: usize, p: Vec3) {
        self.positions[t * JOINT_COUNT + j] = p;
    }

    pub fn frame(&self, t: usize) -> &[Vec3] {
        &self.positions[t * JOINT_COUNT..(t + 1) * JOINT_COUNT]
    }

    pub fn frame_mut(&mut self, t: usize) -> &mut [Vec3] {
        &mut self.positions[t * JOINT_COUNT..(t + 1) * JOINT_COUNT]
    }

    pub fn with_contacts(mut self, contacts: Option<Vec<Contact>>) -> Result<Self> {
        self.contacts = None;
        Self::from_flat(self.positions, self.frames, self.fps, contacts)
    }

    /// Per-frame joint lists, the layout used by the JSON format.
    pub fn to_frames(&self) -> Vec<Vec<Vec3>> {
        self.positions.chunks(JOINT_COUNT).map(|c| c.to_vec()).collect()
    }

    /// Facing yaw of the pelvis at frame `t`, in (-pi, pi].
    ///
    /// The facing direction is the XZ inter-hip vector (left minus right)
    /// turned a quarter turn, so a body facing +Z has yaw 0. Frames whose
    /// hip vector has (near) zero horizontal length carry the previous
    /// frame's yaw forward; a degenerate frame 0 has yaw 0.
    pub fn pelvis_yaw(&self, t: usize) -> f64 {
        let mut last = 0.0;
        for f in 0..=t {
            if let Some(y) = self.raw_yaw(f) {
                last = y;
            }
        }
        last
    }

    /// Yaw of every frame, with the same carry-forward rule as
    /// [`Self::pelvis_yaw`].
    pub fn yaw_series(&self) -> Vec<f64> {
        let mut last = 0.0;
        (0..self.frames)
            .map(|f| {
                if let Some(y) = self.raw_yaw(f) {
                    last = y;
                }
                last
            })
            .collect()
    }

    fn raw_yaw(&self, t: usize) -> Option<f64> {
        let h = vec3::sub(self.pos(t, skeleton::LEFT_HIP), self.pos(t, skeleton::RIGHT_HIP));
        if h[0].hypot(h[2]) < 1e-9 {
            return None;
        }
        Some(vec3::wrap_angle((-h[2]).atan2(h[0])))
    }

    /// Copy with every joint translated by `offset`.
    pub fn translated(&self, offset: Vec3) -> Self {
        let mut out = self.clone();
        for p in &mut out.positions {
            *p = vec3::add(*p, offset);
        }
        out
    }

    /// Copy rotated about the world Y axis through the origin.
    pub fn rotated_y(&self, angle: f64) -> Self {
        let mut out = self.clone();
        for p in &mut out.positions {
            *p = vec3::rotate_y(*p, angle);
        }
        out
    }

    /// Mirror image: world X negated and left/right joint identities swapped.
    /// Contacts swap feet accordingly.
    pub fn mirrored(&self) -> Self {
        let sk = self.skeleton();
        let mut out = self.clone();
        for t in 0..self.frames {
            for j in 0..JOINT_COUNT {
                let p = self.pos(t, sk.mirror_joint(j));
                out.set_pos(t, j, [-p[0], p[1], p[2]]);
            }
        }
        if let Some(c) = &mut out.contacts {
            for row in c.iter_mut() {
                *row = [row[2], row[3], row[0], row[1]];
            }
        }
        out
    }
}
