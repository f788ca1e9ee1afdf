//! Dynamic time warping over normalised poses.

use crate::motion::MotionSequence;
use crate::skeleton::{JOINT_COUNT, PELVIS};
use crate::vec3::{self, Vec3};

/// Poses with the pelvis at the origin, facing yaw 0, and scaled by the
/// sequence's mean summed bone length.
pub fn normalized_poses(seq: &MotionSequence) -> Vec<[Vec3; JOINT_COUNT]> {
    let sk = seq.skeleton();
    let bones: Vec<(usize, usize)> = sk.bones().collect();
    let scale = (0..seq.frames())
        .map(|t| bones.iter().map(|&(c, p)| vec3::dist(seq.pos(t, c), seq.pos(t, p))).sum::<f64>())
        .sum::<f64>()
        / seq.frames() as f64;
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let yaws = seq.yaw_series();
    (0..seq.frames())
        .map(|t| {
            let root = seq.pos(t, PELVIS);
            std::array::from_fn(|j| vec3::scale(vec3::rotate_y(vec3::sub(seq.pos(t, j), root), -yaws[t]), 1.0 / scale))
        })
        .collect()
}

/// L2 distance between two normalised poses, over all joint coordinates.
pub fn pose_distance(a: &[Vec3; JOINT_COUNT], b: &[Vec3; JOINT_COUNT]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| {
            let d = vec3::sub(*p, *q);
            d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
        })
        .sum::<f64>()
        .sqrt()
}

/// Accumulated pose distance along the optimal alignment (steps right, down
/// and diagonal, no band).
pub fn dtw_cost(a: &MotionSequence, b: &MotionSequence) -> f64 {
    let pa = normalized_poses(a);
    let pb = normalized_poses(b);
    let m = pb.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![0.0; m];
    for (i, x) in pa.iter().enumerate() {
        for j in 0..m {
            let c = pose_distance(x, &pb[j]);
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(cur[j - 1]).min(prev[j - 1]),
            };
            cur[j] = c + best;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}
