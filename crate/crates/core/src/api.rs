//! JSON documents shared by the CLI, the HTTP service and the browser demo.
//! Every front end serializes through these types so that the same input
//! produces the same bytes everywhere.

use serde::Serialize;

use crate::complexity::ComplexityProfile;
use crate::io::to_json_value;
use crate::simplify::SimplifyResult;
use crate::skeleton::{Chain, CHAINS, JOINT_COUNT, JOINT_NAMES, JOINT_PARENTS};

/// Joint tables a viewer needs to draw the skeleton.
#[derive(Debug, Clone, Serialize)]
pub struct SkeletonLayout {
    pub joints: [&'static str; JOINT_COUNT],
    pub parents: [Option<usize>; JOINT_COUNT],
    pub chains: [Chain; 4],
}

pub fn skeleton_layout() -> SkeletonLayout {
    SkeletonLayout { joints: JOINT_NAMES, parents: JOINT_PARENTS, chains: CHAINS }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileDocument<'a> {
    pub frames: usize,
    pub fps: f64,
    #[serde(flatten)]
    pub profile: &'a ComplexityProfile,
    pub skeleton: SkeletonLayout,
}

pub fn profile_document(profile: &ComplexityProfile, frames: usize, fps: f64) -> ProfileDocument<'_> {
    ProfileDocument { frames, fps, profile, skeleton: skeleton_layout() }
}

/// Compact JSON text of a profile document.
pub fn profile_json(profile: &ComplexityProfile, frames: usize, fps: f64) -> String {
    serde_json::to_string(&profile_document(profile, frames, fps)).expect("profile serializes")
}

/// A simplify run including the output motion as motion-JSON.
#[derive(Debug, Clone, Serialize)]
pub struct SimplifyDocument<'a> {
    #[serde(flatten)]
    pub report: crate::simplify::SimplifyReport<'a>,
    pub motion: serde_json::Value,
}

pub fn simplify_document(result: &SimplifyResult) -> SimplifyDocument<'_> {
    SimplifyDocument { report: result.report(), motion: to_json_value(&result.motion) }
}

pub fn simplify_json(result: &SimplifyResult) -> String {
    serde_json::to_string(&simplify_document(result)).expect("result serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{compute_profile, MetricWeights};
    use crate::fixtures;
    use crate::simplify::{simplify, SimplifyConfig};

    #[test]
    fn profile_document_carries_scores_and_tree() {
        let seq = fixtures::static_pose(20, 30.0);
        let p = compute_profile(&seq, &MetricWeights::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&profile_json(&p, 20, 30.0)).unwrap();
        assert_eq!(v["c1"], 0.0);
        assert_eq!(v["frames"], 20);
        assert_eq!(v["activations"]["c3"].as_array().unwrap().len(), 20);
        assert_eq!(v["skeleton"]["parents"][0], serde_json::Value::Null);
        assert_eq!(v["skeleton"]["joints"].as_array().unwrap().len(), 24);
    }

    #[test]
    fn simplify_document_embeds_motion() {
        let seq = fixtures::random_dance(1, 60, 60.0);
        let r = simplify(&seq, &SimplifyConfig::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&simplify_json(&r)).unwrap();
        assert_eq!(v["motion"]["frames"].as_array().unwrap().len(), 60);
        assert_eq!(v["applied"].as_array().unwrap().len(), 5);
        assert!(v["before"]["c2"].is_number());
    }
}
