use std::time::Instant;

use motionsimp::complexity::compute_profile;
use motionsimp::criterion::Criterion;
use motionsimp::fixtures;
use motionsimp::simplify::{simplify, SimplifyConfig};

#[test]
fn accepted_stages_lower_scores_and_rejected_stages_change_nothing() {
    let cfg = SimplifyConfig::default();
    let w = cfg.weights();
    let mut accepted = [0usize; 5];
    for seed in 0..40u64 {
        let seq = fixtures::random_dance(seed, 120 + (seed as usize * 7) % 180, 60.0);
        let r = simplify(&seq, &cfg).unwrap();
        // Replay the record stage by stage.
        let mut scores = r.before.scores;
        for rec in &r.applied {
            let c = rec.criterion;
            assert_eq!(rec.score_before, scores.get(c));
            if rec.accepted {
                accepted[c.index()] += 1;
                assert!(rec.score_candidate.unwrap() < rec.score_before);
                scores = match c {
                    Criterion::Asymmetry => scores,
                    _ => compute_profile(&replay_until(&seq, &cfg, c), &w).unwrap().scores,
                };
            }
        }
        if r.applied.iter().all(|s| !s.accepted) {
            assert_eq!(r.motion, seq);
        }
        assert_eq!(r.motion.frames(), seq.frames());
        assert_eq!(r.after, compute_profile(&r.motion, &w).unwrap());
    }
    assert!(accepted.iter().sum::<usize>() > 0, "no stage ever accepted: {accepted:?}");
}

/// Result of running only the stages up to and including `last`.
fn replay_until(seq: &motionsimp::MotionSequence, cfg: &SimplifyConfig, last: Criterion) -> motionsimp::MotionSequence {
    let mut c = cfg.clone();
    for k in Criterion::ALL {
        c.criteria_enabled[k.index()] = cfg.criteria_enabled[k.index()] && k.index() <= last.index();
    }
    simplify(seq, &c).unwrap().motion
}

#[test]
fn explicit_thresholds_gate_stages() {
    let seq = fixtures::random_dance(3, 200, 60.0);
    let cfg = SimplifyConfig { tau: [Some(1e9); 5], ..Default::default() };
    let r = simplify(&seq, &cfg).unwrap();
    assert!(r.applied.iter().all(|s| !s.attempted));
    assert_eq!(r.motion, seq);
}

#[test]
fn second_pass_does_not_raise_scores() {
    let cfg = SimplifyConfig::default();
    for seed in 0..10 {
        let seq = fixtures::random_dance(seed, 180, 60.0);
        let once = simplify(&seq, &cfg).unwrap();
        let twice = simplify(&once.motion, &cfg).unwrap();
        // Each stage of the second pass is itself guarded, so any change it
        // commits lowers the score that stage targets.
        for rec in &twice.applied {
            if rec.accepted {
                assert!(rec.score_candidate.unwrap() < rec.score_before);
            }
        }
    }
}

#[test]
fn walker_footwork_stage_runs() {
    // Each swing peak lasts well under the quarter-second default.
    let seq = fixtures::walker(1, 300, 60.0, 0.5);
    let cfg = SimplifyConfig { min_len: [Some(4), None, None, None, None], ..Default::default() };
    let r = simplify(&seq, &cfg).unwrap();
    let c1 = &r.applied[0];
    assert!(c1.attempted);
    assert!(!c1.intervals.is_empty());
    assert_eq!(r.motion.contacts(), seq.contacts());
}

#[test]
fn three_hundred_frames_in_under_100ms() {
    let seq = fixtures::random_dance(42, 300, 60.0);
    let cfg = SimplifyConfig::default();
    simplify(&seq, &cfg).unwrap();
    let start = Instant::now();
    simplify(&seq, &cfg).unwrap();
    let ms = start.elapsed().as_secs_f64() * 1e3;
    assert!(ms < 100.0, "{ms:.1} ms");
}

#[test]
fn report_serializes_intervals_with_short_keys() {
    let seq = fixtures::walker(2, 240, 60.0, 0.5);
    let cfg = SimplifyConfig { min_len: [Some(4), None, None, None, None], ..Default::default() };
    let r = simplify(&seq, &cfg).unwrap();
    let v = serde_json::to_value(r.report()).unwrap();
    assert!(v["before"]["c1"].is_number());
    let stage = &v["applied"][0];
    assert_eq!(stage["criterion"], 1);
    let iv = &stage["intervals"][0];
    assert!(iv["s"].is_u64() && iv["e"].is_u64() && iv["joints"].is_array());
}
