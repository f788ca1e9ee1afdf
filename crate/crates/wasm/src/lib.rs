//! Browser bindings. All values cross the boundary as JSON text in the same
//! shapes the HTTP service returns.

use motionsimp::api;
use motionsimp::fixtures::{self, FixtureKind};
use motionsimp::io::{from_json_str, to_json_string};
use motionsimp::simplify::{simplify as run_simplify, SimplifyConfig};
use motionsimp::{compute_profile, MetricWeights};
use wasm_bindgen::prelude::*;

/// Longest clip the demo will generate (ten seconds at 60 fps).
pub const MAX_FIXTURE_FRAMES: usize = 600;

pub fn fixture_json(kind: &str, seed: u64, frames: usize, fps: f64) -> Result<String, String> {
    let kind: FixtureKind = kind.parse().map_err(|e| format!("{e}"))?;
    if !(2..=MAX_FIXTURE_FRAMES).contains(&frames) {
        return Err(format!("frames must be in 2..={MAX_FIXTURE_FRAMES}"));
    }
    if !(fps.is_finite() && fps > 0.0) {
        return Err("fps must be positive".into());
    }
    Ok(to_json_string(&fixtures::generate(kind, seed, frames, fps)))
}

pub fn analyze_json(motion: &str) -> Result<String, String> {
    let seq = from_json_str(motion).map_err(|e| e.to_string())?;
    let p = compute_profile(&seq, &MetricWeights::default()).map_err(|e| e.to_string())?;
    Ok(api::profile_json(&p, seq.frames(), seq.fps()))
}

/// An empty or blank config means the defaults.
pub fn simplify_json(motion: &str, config: &str) -> Result<String, String> {
    let seq = from_json_str(motion).map_err(|e| e.to_string())?;
    let cfg: SimplifyConfig = if config.trim().is_empty() {
        SimplifyConfig::default()
    } else {
        serde_json::from_str(config).map_err(|e| e.to_string())?
    };
    let r = run_simplify(&seq, &cfg).map_err(|e| e.to_string())?;
    Ok(api::simplify_json(&r))
}

pub fn skeleton_json() -> String {
    serde_json::to_string(&api::skeleton_layout()).expect("layout serializes")
}

pub fn default_config_json() -> String {
    serde_json::to_string(&SimplifyConfig::default()).expect("config serializes")
}

pub fn fixture_kinds() -> Vec<&'static str> {
    FixtureKind::ALL.iter().map(|k| k.name()).collect()
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fixture(kind: &str, seed: u32, frames: u32, fps: f64) -> Result<String, JsError> {
    js(fixture_json(kind, seed.into(), frames as usize, fps))
}

#[wasm_bindgen]
pub fn analyze(motion: &str) -> Result<String, JsError> {
    js(analyze_json(motion))
}

#[wasm_bindgen]
pub fn simplify(motion: &str, config: &str) -> Result<String, JsError> {
    js(simplify_json(motion, config))
}

#[wasm_bindgen]
pub fn skeleton() -> String {
    skeleton_json()
}

#[wasm_bindgen(js_name = defaultConfig)]
pub fn default_config() -> String {
    default_config_json()
}

#[wasm_bindgen(js_name = fixtureKinds)]
pub fn fixture_kinds_js() -> String {
    serde_json::to_string(&fixture_kinds()).expect("names serialize")
}
