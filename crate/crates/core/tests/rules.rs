use motionsimp::criterion::Criterion;
use motionsimp::fixtures;
use motionsimp::intervals::ComplexInterval;
use motionsimp::simplify::{
    compress_steps, decay_offset, directional_change, distance_compression, flip_steps, orientation_stabilization,
    reattach_root, smooth_discontinuity, stretch_steps, velocity_reduction, PsiTarget,
};
use motionsimp::skeleton::{JOINT_COUNT, LEFT_ARM, LEFT_WRIST, PELVIS, RIGHT_ARM};
use motionsimp::vec3::{self, Vec3};
use motionsimp::MotionSequence;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn interval(c: Criterion, start: usize, end: usize, joints: &[usize]) -> ComplexInterval {
    ComplexInterval { criterion: c, start, end, joints: joints.to_vec() }
}

/// Rest pose with the left wrist following `xs` along X.
fn wrist_track(xs: &[f64]) -> MotionSequence {
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

fn wrist_x(seq: &MotionSequence) -> Vec<f64> {
    (0..seq.frames()).map(|t| seq.pos(t, LEFT_WRIST)[0]).collect()
}

fn step(seq: &MotionSequence, t: usize, j: usize) -> Vec3 {
    vec3::sub(seq.pos(t, j), seq.pos(t - 1, j))
}

#[test]
fn compression_scales_every_step() {
    let src = fixtures::random_dance(1, 120, 60.0);
    for k in [0.0, 0.25, 0.5, 1.0] {
        let out = compress_steps(&src, &LEFT_ARM, 20, 80, k);
        for &j in &LEFT_ARM {
            assert_eq!(out.pos(20, j), src.pos(20, j));
            for t in 21..=80 {
                let (g, s) = (step(&out, t, j), step(&src, t, j));
                for a in 0..3 {
                    assert!((g[a] - k * s[a]).abs() < 1e-12);
                }
            }
        }
        // Outside the interval and on other joints nothing moves.
        assert_eq!(out.frame(81), src.frame(81));
        assert_eq!(out.pos(50, RIGHT_ARM[2]), src.pos(50, RIGHT_ARM[2]));
    }
}

#[test]
fn compression_with_unit_factor_is_identity() {
    let src = fixtures::random_dance(2, 90, 60.0);
    let iv = interval(Criterion::Density, 10, 60, &[LEFT_ARM, RIGHT_ARM].concat());
    let out = distance_compression(&src, &[iv], 1.0);
    for (a, b) in out.positions().iter().zip(src.positions()) {
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-12);
        }
    }
}

#[test]
fn compression_to_zero_freezes_joints() {
    let src = fixtures::random_dance(3, 90, 60.0);
    let out = compress_steps(&src, &LEFT_ARM, 10, 40, 0.0);
    for t in 10..=40 {
        assert_eq!(out.pos(t, LEFT_WRIST), src.pos(10, LEFT_WRIST));
    }
}

#[test]
fn half_compression_of_two_metre_path() {
    let xs: Vec<f64> = (0..=20).map(|i| 0.1 * i as f64).collect();
    let out = compress_steps(&wrist_track(&xs), &[LEFT_WRIST], 0, 20, 0.5);
    assert!((wrist_x(&out)[20] - 1.0).abs() < 1e-12);
}

#[test]
fn stretch_trace_and_endpoint() {
    let seq = wrist_track(&[0.0, 1.0, 2.0, 9.0, 9.0, 9.0]);
    let out = stretch_steps(&seq, &[LEFT_WRIST], 0, 2, 2).unwrap();
    assert_eq!(&wrist_x(&out)[..5], &[0.0, 0.5, 1.0, 1.5, 2.0]);

    let src = fixtures::random_dance(4, 100, 60.0);
    for (s, e, lambda) in [(10, 30, 2), (0, 20, 3), (40, 59, 2)] {
        let out = stretch_steps(&src, &LEFT_ARM, s, e, lambda).unwrap();
        let new_end = s + (e - s) * lambda;
        for &j in &LEFT_ARM {
            assert_eq!(out.pos(new_end, j), src.pos(e, j));
            assert_eq!(out.pos(s, j), src.pos(s, j));
        }
    }
}

#[test]
fn stretch_past_the_end_is_skipped() {
    let src = fixtures::random_dance(5, 60, 60.0);
    assert!(stretch_steps(&src, &LEFT_ARM, 20, 40, 2).is_none());
    let iv = interval(Criterion::Footwork, 20, 40, &LEFT_ARM);
    assert_eq!(velocity_reduction(&src, &[iv], 2), src);
}

#[test]
fn flip_preserves_step_magnitudes() {
    let src = fixtures::random_dance(6, 120, 60.0);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let flip: [i8; 3] = std::array::from_fn(|_| if rng.random_bool(0.5) { 1 } else { -1 });
        let out = flip_steps(&src, &RIGHT_ARM, 15, 100, flip);
        for &j in &RIGHT_ARM {
            for t in 16..=100 {
                let (g, s) = (step(&out, t, j), step(&src, t, j));
                for a in 0..3 {
                    assert!((g[a].abs() - s[a].abs()).abs() < 1e-12);
                    assert!((g[a] - f64::from(flip[a]) * s[a]).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn flip_identity_and_ramp() {
    let src = fixtures::random_dance(7, 60, 60.0);
    let out = flip_steps(&src, &RIGHT_ARM, 5, 50, [1, 1, 1]);
    for (a, b) in out.positions().iter().zip(src.positions()) {
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-12);
        }
    }
    let xs: Vec<f64> = (0..=10).map(|i| 0.1 * i as f64).collect();
    let out = flip_steps(&wrist_track(&xs), &[LEFT_WRIST], 0, 10, [-1, 1, 1]);
    assert!((wrist_x(&out)[10] + 1.0).abs() < 1e-12);
}

#[test]
fn stabilization_is_rigid_and_hits_target() {
    let src = fixtures::random_dance(8, 150, 60.0);
    for target in [PsiTarget::Radians(0.0), PsiTarget::Radians(-2.0), PsiTarget::FirstFrame] {
        let iv = interval(Criterion::Rotation, 30, 120, &(0..JOINT_COUNT).collect::<Vec<_>>());
        let out = orientation_stabilization(&src, &[iv], target);
        let psi = match target {
            PsiTarget::Radians(r) => r,
            PsiTarget::FirstFrame => src.pelvis_yaw(30),
        };
        for f in 30..=120 {
            let err = vec3::wrap_angle(out.pelvis_yaw(f) - psi);
            assert!(err.abs() < 1e-6, "frame {f}: {err}");
            assert_eq!(out.pos(f, PELVIS), src.pos(f, PELVIS));
            for a in 0..JOINT_COUNT {
                for b in a + 1..JOINT_COUNT {
                    let d0 = vec3::dist(src.pos(f, a), src.pos(f, b));
                    let d1 = vec3::dist(out.pos(f, a), out.pos(f, b));
                    assert!((d0 - d1).abs() < 1e-12);
                }
            }
        }
        assert_eq!(out.frame(29), src.frame(29));
    }
}

#[test]
fn stabilizing_an_already_aligned_clip_changes_nothing() {
    let src = fixtures::mirror_arms(1, 60, 60.0);
    let iv = interval(Criterion::Rotation, 0, 59, &[]);
    let out = orientation_stabilization(&src, &[iv], PsiTarget::Radians(0.0));
    for (a, b) in out.positions().iter().zip(src.positions()) {
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() < 1e-12);
        }
    }
}

#[test]
fn reattachment_pins_root_and_keeps_chain_shape() {
    let orig = fixtures::random_dance(9, 80, 60.0);
    let mut gen = orig.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for t in 0..80 {
        for &j in &LEFT_ARM {
            let p = gen.pos(t, j);
            gen.set_pos(t, j, [p[0] + rng.random_range(-0.3..0.3), p[1], p[2] + rng.random_range(-0.3..0.3)]);
        }
    }
    let out = reattach_root(&orig, &gen, &LEFT_ARM, (10, 70));
    for f in 10..=70 {
        assert_eq!(out.pos(f, LEFT_ARM[0]), orig.pos(f, LEFT_ARM[0]));
        for &j in &LEFT_ARM[1..] {
            let before = vec3::sub(gen.pos(f, j), gen.pos(f, LEFT_ARM[0]));
            let after = vec3::sub(out.pos(f, j), out.pos(f, LEFT_ARM[0]));
            for a in 0..3 {
                assert!((before[a] - after[a]).abs() < 1e-12);
            }
        }
    }
    assert_eq!(out.frame(9), gen.frame(9));
    assert_eq!(reattach_root(&orig, &orig, &LEFT_ARM, (0, 79)), orig);
}

#[test]
fn smoothing_hand_trace() {
    // Original wrist moves -x by 0.05 per frame; the edit left it 0.1 short
    // at the boundary, so the offset is absorbed over two frames.
    let xs: Vec<f64> = (0..8).map(|i| 1.0 - 0.05 * i as f64).collect();
    let orig = wrist_track(&xs);
    let mut gen = orig.clone();
    gen.set_pos(3, LEFT_WRIST, [xs[3] - 0.1, 1.4, 0.0]);
    let out = smooth_discontinuity(&orig, &gen, &[LEFT_WRIST], 3);
    let x = wrist_x(&out);
    let expect = [xs[4] - 0.1, xs[5] - 0.05, xs[6], xs[7]];
    for (g, w) in x[4..].iter().zip(expect) {
        assert!((g - w).abs() < 1e-12, "{x:?}");
    }
    assert_eq!(&x[..3], &xs[..3]);
}

#[test]
fn smoothing_offset_decays_monotonically_without_sign_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..2000 {
        let mut o: Vec3 = std::array::from_fn(|_| rng.random_range(-0.5..0.5));
        for _ in 0..30 {
            let d: Vec3 = std::array::from_fn(|_| rng.random_range(-0.1..0.1));
            let next = decay_offset(o, d);
            for a in 0..3 {
                assert!(next[a].abs() <= o[a].abs());
                assert!(next[a] == 0.0 || next[a].signum() == o[a].signum());
            }
            o = next;
        }
    }
}

#[test]
fn smoothing_only_translates_following_frames() {
    let orig = fixtures::random_dance(13, 90, 60.0);
    let gen = compress_steps(&orig, &LEFT_ARM, 10, 40, 0.3);
    let out = smooth_discontinuity(&orig, &gen, &LEFT_ARM, 40);
    for t in 0..=40 {
        assert_eq!(out.frame(t), gen.frame(t));
    }
    // The first following frame is shifted by exactly the endpoint offset.
    for &j in &LEFT_ARM {
        let o = vec3::sub(orig.pos(40, j), gen.pos(40, j));
        let expect = vec3::sub(gen.pos(41, j), o);
        assert_eq!(out.pos(41, j), expect);
    }
}

#[test]
fn rules_keep_shape_and_untargeted_joints() {
    let src = fixtures::random_dance(14, 200, 60.0);
    let arms = [LEFT_ARM, RIGHT_ARM].concat();
    let ivs = [interval(Criterion::Density, 20, 60, &arms), interval(Criterion::Density, 100, 140, &arms)];
    let outs = [
        distance_compression(&src, &ivs, 0.5),
        velocity_reduction(&src, &ivs, 2),
        directional_change(&src, &ivs, [-1, 1, 1]),
    ];
    for out in outs {
        assert_eq!(out.frames(), src.frames());
        for t in 0..src.frames() {
            for j in 0..JOINT_COUNT {
                if !arms.contains(&j) {
                    assert_eq!(out.pos(t, j), src.pos(t, j));
                }
            }
        }
        for t in 0..20 {
            assert_eq!(out.frame(t), src.frame(t));
        }
    }
}
