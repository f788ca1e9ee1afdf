use motionsimp::fixtures;
use motionsimp::io::to_json_string;
use motionsimp::simplify::{simplify, SimplifyConfig};
use motionsimp::{compute_profile, MetricWeights};
use motionsimp_wasm::{analyze_json, default_config_json, fixture_json, fixture_kinds, simplify_json, skeleton_json};
use serde_json::Value;

#[test]
fn fixture_matches_library() {
    let text = fixture_json("walker", 3, 120, 60.0).unwrap();
    assert_eq!(text, to_json_string(&fixtures::generate(fixtures::FixtureKind::Walker, 3, 120, 60.0)));
    assert!(fixture_json("moonwalk", 0, 120, 60.0).is_err());
    assert!(fixture_json("walker", 0, 1, 60.0).is_err());
    assert!(fixture_json("walker", 0, 100, 0.0).is_err());
    assert_eq!(fixture_kinds().len(), fixtures::FixtureKind::ALL.len());
}

#[test]
fn analyze_matches_profile_document() {
    let seq = fixtures::random_dance(2, 90, 60.0);
    let want = motionsimp::api::profile_json(
        &compute_profile(&seq, &MetricWeights::default()).unwrap(),
        seq.frames(),
        seq.fps(),
    );
    assert_eq!(analyze_json(&to_json_string(&seq)).unwrap(), want);
    assert!(analyze_json("{}").is_err());
}

#[test]
fn simplify_uses_config() {
    let seq = fixtures::random_dance(5, 120, 60.0);
    let text = to_json_string(&seq);
    let default = simplify_json(&text, "").unwrap();
    assert_eq!(default, motionsimp::api::simplify_json(&simplify(&seq, &SimplifyConfig::default()).unwrap()));

    let off = simplify_json(&text, r#"{"criteria_enabled":[false,false,false,false,false]}"#).unwrap();
    let v: Value = serde_json::from_str(&off).unwrap();
    assert_eq!(v["before"], v["after"]);
    assert!(simplify_json(&text, r#"{"k": 7}"#).is_err());
    assert!(simplify_json(&text, "{").is_err());
}

#[test]
fn static_tables() {
    let sk: Value = serde_json::from_str(&skeleton_json()).unwrap();
    assert_eq!(sk["parents"].as_array().unwrap().len(), 24);
    let cfg: SimplifyConfig = serde_json::from_str(&default_config_json()).unwrap();
    assert_eq!(cfg, SimplifyConfig::default());
}
