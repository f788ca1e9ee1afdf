//! The SMPL 24-joint layout and the joint groups the metrics and rules use.
//!
//! Coordinates are world-space meters with +Y up. A body in its canonical
//! orientation faces +Z with its left side towards +X.

use serde::Serialize;

pub const JOINT_COUNT: usize = 24;

pub const PELVIS: usize = 0;
pub const LEFT_HIP: usize = 1;
pub const RIGHT_HIP: usize = 2;
pub const SPINE1: usize = 3;
pub const LEFT_KNEE: usize = 4;
pub const RIGHT_KNEE: usize = 5;
pub const SPINE2: usize = 6;
pub const LEFT_ANKLE: usize = 7;
pub const RIGHT_ANKLE: usize = 8;
pub const SPINE3: usize = 9;
pub const LEFT_FOOT: usize = 10;
pub const RIGHT_FOOT: usize = 11;
pub const NECK: usize = 12;
pub const LEFT_COLLAR: usize = 13;
pub const RIGHT_COLLAR: usize = 14;
pub const HEAD: usize = 15;
pub const LEFT_SHOULDER: usize = 16;
pub const RIGHT_SHOULDER: usize = 17;
pub const LEFT_ELBOW: usize = 18;
pub const RIGHT_ELBOW: usize = 19;
pub const LEFT_WRIST: usize = 20;
pub const RIGHT_WRIST: usize = 21;
pub const LEFT_HAND: usize = 22;
pub const RIGHT_HAND: usize = 23;

pub const JOINT_NAMES: [&str; JOINT_COUNT] = [
    "pelvis",
    "left_hip",
    "right_hip",
    "spine1",
    "left_knee",
    "right_knee",
    "spine2",
    "left_ankle",
    "right_ankle",
    "spine3",
    "left_foot",
    "right_foot",
    "neck",
    "left_collar",
    "right_collar",
    "head",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "left_hand",
    "right_hand",
];

pub const JOINT_PARENTS: [Option<usize>; JOINT_COUNT] = [
    None,
    Some(PELVIS),
    Some(PELVIS),
    Some(PELVIS),
    Some(LEFT_HIP),
    Some(RIGHT_HIP),
    Some(SPINE1),
    Some(LEFT_KNEE),
    Some(RIGHT_KNEE),
    Some(SPINE2),
    Some(LEFT_ANKLE),
    Some(RIGHT_ANKLE),
    Some(SPINE3),
    Some(SPINE3),
    Some(SPINE3),
    Some(NECK),
    Some(LEFT_COLLAR),
    Some(RIGHT_COLLAR),
    Some(LEFT_SHOULDER),
    Some(RIGHT_SHOULDER),
    Some(LEFT_ELBOW),
    Some(RIGHT_ELBOW),
    Some(LEFT_WRIST),
    Some(RIGHT_WRIST),
];

/// Foot joints in contact-vector order: left ankle, left foot, right ankle,
/// right foot.
pub const FEET: [usize; 4] = [LEFT_ANKLE, LEFT_FOOT, RIGHT_ANKLE, RIGHT_FOOT];

pub const LOWER: [usize; 8] = [
    LEFT_HIP,
    RIGHT_HIP,
    LEFT_KNEE,
    RIGHT_KNEE,
    LEFT_ANKLE,
    RIGHT_ANKLE,
    LEFT_FOOT,
    RIGHT_FOOT,
];

pub const UPPER: [usize; 8] = [
    LEFT_COLLAR,
    RIGHT_COLLAR,
    LEFT_SHOULDER,
    RIGHT_SHOULDER,
    LEFT_ELBOW,
    RIGHT_ELBOW,
    LEFT_WRIST,
    RIGHT_WRIST,
];

/// Arm and leg joints used by the movement-density score.
pub const LIMBS: [usize; 12] = [
    LEFT_KNEE,
    RIGHT_KNEE,
    LEFT_ANKLE,
    RIGHT_ANKLE,
    LEFT_FOOT,
    RIGHT_FOOT,
    LEFT_SHOULDER,
    RIGHT_SHOULDER,
    LEFT_ELBOW,
    RIGHT_ELBOW,
    LEFT_WRIST,
    RIGHT_WRIST,
];

/// Bilateral (left, right) pairs: ankle, knee, hip, shoulder, elbow, wrist.
pub const PAIRS: [(usize, usize); 6] = [
    (LEFT_ANKLE, RIGHT_ANKLE),
    (LEFT_KNEE, RIGHT_KNEE),
    (LEFT_HIP, RIGHT_HIP),
    (LEFT_SHOULDER, RIGHT_SHOULDER),
    (LEFT_ELBOW, RIGHT_ELBOW),
    (LEFT_WRIST, RIGHT_WRIST),
];

pub const LEFT_LEG: [usize; 4] = [LEFT_HIP, LEFT_KNEE, LEFT_ANKLE, LEFT_FOOT];
pub const RIGHT_LEG: [usize; 4] = [RIGHT_HIP, RIGHT_KNEE, RIGHT_ANKLE, RIGHT_FOOT];
pub const LEFT_ARM: [usize; 4] = [LEFT_SHOULDER, LEFT_ELBOW, LEFT_WRIST, LEFT_HAND];
pub const RIGHT_ARM: [usize; 4] = [RIGHT_SHOULDER, RIGHT_ELBOW, RIGHT_WRIST, RIGHT_HAND];

/// Named kinematic chain. The first joint is the chain root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub name: &'static str,
    pub joints: &'static [usize],
}

pub const CHAINS: [Chain; 4] = [
    Chain { name: "left_leg", joints: &LEFT_LEG },
    Chain { name: "right_leg", joints: &RIGHT_LEG },
    Chain { name: "left_arm", joints: &LEFT_ARM },
    Chain { name: "right_arm", joints: &RIGHT_ARM },
];

/// Index into [`CHAINS`].
pub mod chain {
    pub const LEFT_LEG: usize = 0;
    pub const RIGHT_LEG: usize = 1;
    pub const LEFT_ARM: usize = 2;
    pub const RIGHT_ARM: usize = 3;
}

/// Table-driven description of the skeleton. There is only one layout, so
/// this is a zero-sized handle over the constant tables above.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SkeletonSpec;

impl SkeletonSpec {
    pub const SMPL24: SkeletonSpec = SkeletonSpec;

    pub fn joint_count(&self) -> usize {
        JOINT_COUNT
    }

    pub fn joint_names(&self) -> &'static [&'static str; JOINT_COUNT] {
        &JOINT_NAMES
    }

    pub fn joint_parents(&self) -> &'static [Option<usize>; JOINT_COUNT] {
        &JOINT_PARENTS
    }

    pub fn joint_index(&self, name: &str) -> Option<usize> {
        JOINT_NAMES.iter().position(|n| *n == name)
    }

    pub fn chains(&self) -> &'static [Chain] {
        &CHAINS
    }

    /// Parent-child edges of the joint tree.
    pub fn bones(&self) -> impl Iterator<Item = (usize, usize)> {
        JOINT_PARENTS
            .iter()
            .enumerate()
            .filter_map(|(child, parent)| parent.map(|p| (p, child)))
    }

    /// Chains whose joints are all contained in `joints`.
    pub fn chains_within(&self, joints: &[usize]) -> Vec<&'static Chain> {
        CHAINS
            .iter()
            .filter(|c| c.joints.iter().all(|j| joints.contains(j)))
            .collect()
    }

    /// Mirror image of a joint: left and right swap, central joints map to
    /// themselves.
    pub fn mirror_joint(&self, joint: usize) -> usize {
        let name = JOINT_NAMES[joint];
        let swapped = if let Some(rest) = name.strip_prefix("left_") {
            format!("right_{rest}")
        } else if let Some(rest) = name.strip_prefix("right_") {
            format!("left_{rest}")
        } else {
            return joint;
        };
        self.joint_index(&swapped).expect("every lateral joint has a mirror")
    }
}
