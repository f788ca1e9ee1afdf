//! Corrections applied after a rule edits a subset of joints: pin each edited
//! limb chain back to its root, then fade out the jump at the interval end.

use crate::motion::MotionSequence;
use crate::vec3::{self, Vec3};

/// Translate `chain` in frames `start..=end` of `gen` so its first joint
/// sits exactly where it is in `orig`.
pub fn reattach_root_in_place(orig: &MotionSequence, gen: &mut MotionSequence, chain: &[usize], start: usize, end: usize) {
    let Some(&root) = chain.first() else { return };
    for f in start..=end.min(gen.frames() - 1) {
        let target = orig.pos(f, root);
        let delta = vec3::sub(target, gen.pos(f, root));
        for &j in &chain[1..] {
            gen.set_pos(f, j, vec3::add(gen.pos(f, j), delta));
        }
        // Assigned rather than offset so the residual is exactly zero.
        gen.set_pos(f, root, target);
    }
}

pub fn reattach_root(orig: &MotionSequence, gen: &MotionSequence, chain: &[usize], span: (usize, usize)) -> MotionSequence {
    let mut out = gen.clone();
    reattach_root_in_place(orig, &mut out, chain, span.0, span.1);
    out
}

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// One decay step of a per-axis offset against an original-motion step `d`:
/// the offset shrinks only when `d` points against it, and snaps to zero
/// rather than crossing it.
pub fn decay_offset(o: Vec3, d: Vec3) -> Vec3 {
    std::array::from_fn(|a| {
        if sign(d[a]) == -sign(o[a]) {
            let u = o[a] + d[a];
            if sign(u) != sign(o[a]) {
                0.0
            } else {
                u
            }
        } else {
            o[a]
        }
    })
}

/// Shift every frame after `boundary` of each joint by the remaining endpoint
/// offset `orig[boundary] - gen[boundary]`, decaying it with [`decay_offset`].
pub fn smooth_discontinuity_in_place(orig: &MotionSequence, gen: &mut MotionSequence, joints: &[usize], boundary: usize) {
    if boundary + 1 >= gen.frames() {
        return;
    }
    for &j in joints {
        let mut o = vec3::sub(orig.pos(boundary, j), gen.pos(boundary, j));
        for f in boundary + 1..gen.frames() {
            if o == [0.0; 3] {
                break;
            }
            let d = vec3::sub(orig.pos(f, j), orig.pos(f - 1, j));
            gen.set_pos(f, j, vec3::sub(gen.pos(f, j), o));
            o = decay_offset(o, d);
        }
    }
}

pub fn smooth_discontinuity(orig: &MotionSequence, gen: &MotionSequence, joints: &[usize], boundary: usize) -> MotionSequence {
    let mut out = gen.clone();
    smooth_discontinuity_in_place(orig, &mut out, joints, boundary);
    out
}

/// Reattach every skeleton chain contained in `joints` over `start..=end`,
/// then smooth the boundary at `end`.
pub(crate) fn post_process(orig: &MotionSequence, gen: &mut MotionSequence, joints: &[usize], start: usize, end: usize) {
    for chain in orig.skeleton().chains_within(joints) {
        reattach_root_in_place(orig, gen, chain.joints, start, end);
    }
    smooth_discontinuity_in_place(orig, gen, joints, end);
}
