//! Fixed-length descriptors of a whole sequence for distribution metrics.

use serde::{Deserialize, Serialize};

use crate::derivatives::DerivativeSet;
use crate::motion::MotionSequence;
use crate::skeleton::*;
use crate::vec3;

pub const KINETIC_DIM: usize = 2 * JOINT_COUNT;
pub const GEOMETRIC_DIM: usize = 3 * GEOMETRIC_PAIRS.len();

/// Joint pairs whose distance mean and std enter the geometric features.
pub const GEOMETRIC_PAIRS: [(usize, usize); 11] = [
    (LEFT_WRIST, RIGHT_WRIST),
    (LEFT_ANKLE, RIGHT_ANKLE),
    (LEFT_ELBOW, RIGHT_ELBOW),
    (LEFT_KNEE, RIGHT_KNEE),
    (LEFT_WRIST, PELVIS),
    (RIGHT_WRIST, PELVIS),
    (LEFT_ANKLE, PELVIS),
    (RIGHT_ANKLE, PELVIS),
    (HEAD, PELVIS),
    (LEFT_WRIST, LEFT_ANKLE),
    (RIGHT_WRIST, RIGHT_ANKLE),
];

/// Joints whose height above the lowest joint of each frame is averaged.
pub const HEIGHT_JOINTS: [usize; 11] = [
    HEAD,
    NECK,
    PELVIS,
    LEFT_WRIST,
    RIGHT_WRIST,
    LEFT_ELBOW,
    RIGHT_ELBOW,
    LEFT_KNEE,
    RIGHT_KNEE,
    LEFT_ANKLE,
    RIGHT_ANKLE,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Kinetic,
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub kind: FeatureKind,
    pub values: Vec<f64>,
}

/// Per joint mean speed (24 values) then mean acceleration magnitude (24).
pub fn kinetic_features(deriv: &DerivativeSet) -> FeatureVector {
    let n = deriv.frames() as f64;
    let mut values = vec![0.0; KINETIC_DIM];
    for j in 0..JOINT_COUNT {
        values[j] = (0..deriv.frames()).map(|t| deriv.speed(t, j)).sum::<f64>() / n;
        values[JOINT_COUNT + j] = (0..deriv.frames()).map(|t| vec3::norm(deriv.acceleration(t, j))).sum::<f64>() / n;
    }
    FeatureVector { kind: FeatureKind::Kinetic, values }
}

/// Mean and population std of each pair distance (22 values), then the mean
/// height of each listed joint above the frame's lowest joint (11).
pub fn geometric_features(seq: &MotionSequence) -> FeatureVector {
    let n = seq.frames() as f64;
    let mut values = Vec::with_capacity(GEOMETRIC_DIM);
    for &(a, b) in &GEOMETRIC_PAIRS {
        let d: Vec<f64> = (0..seq.frames()).map(|t| vec3::dist(seq.pos(t, a), seq.pos(t, b))).collect();
        let mean = d.iter().sum::<f64>() / n;
        // Shifted by the first sample so a constant distance has std exactly 0.
        let shift = d.iter().map(|x| x - d[0]).sum::<f64>() / n;
        let var = d.iter().map(|x| (x - d[0] - shift).powi(2)).sum::<f64>() / n;
        values.push(mean);
        values.push(var.sqrt());
    }
    let floor: Vec<f64> = (0..seq.frames())
        .map(|t| seq.frame(t).iter().map(|p| p[1]).fold(f64::INFINITY, f64::min))
        .collect();
    for &j in &HEIGHT_JOINTS {
        values.push((0..seq.frames()).map(|t| seq.pos(t, j)[1] - floor[t]).sum::<f64>() / n);
    }
    FeatureVector { kind: FeatureKind::Geometric, values }
}

/// Mean Euclidean distance over all unordered pairs (0 for fewer than two).
pub fn diversity(feats: &[FeatureVector]) -> f64 {
    let n = feats.len();
    if n < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..n {
        for k in i + 1..n {
            total += feats[i]
                .values
                .iter()
                .zip(&feats[k].values)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
        }
    }
    total / (n * (n - 1) / 2) as f64
}
