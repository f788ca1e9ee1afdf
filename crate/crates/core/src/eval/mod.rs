//! Evaluation of simplified motion: physical plausibility, distribution
//! distance and spread in feature space, and alignment cost.

mod dtw;
mod features;
mod frechet;
mod physical;

use serde::{Deserialize, Serialize};

pub use dtw::{dtw_cost, normalized_poses, pose_distance};
pub use features::{
    diversity, geometric_features, kinetic_features, FeatureKind, FeatureVector, GEOMETRIC_DIM, GEOMETRIC_PAIRS,
    HEIGHT_JOINTS, KINETIC_DIM,
};
pub use frechet::frechet_distance;
pub use physical::{pbc, pfc};

use crate::derivatives::derivatives_adaptive;
use crate::error::Result;
use crate::motion::MotionSequence;
use crate::savgol::SavGolParams;

/// Feature definitions and formulas change the meaning of FID and
/// diversity values, so reports carry this tag.
pub const EVAL_VERSION: &str = "motionsimp-eval/1";

pub fn fid(sample: &[FeatureVector], reference: &[FeatureVector]) -> Result<f64> {
    frechet_distance(sample, reference)
}

/// Kinetic and geometric features of one sequence.
pub fn features(seq: &MotionSequence, sg: SavGolParams) -> Result<(FeatureVector, FeatureVector)> {
    let d = derivatives_adaptive(seq, sg)?;
    Ok((kinetic_features(&d), geometric_features(seq)))
}

pub fn pfc_of(seq: &MotionSequence) -> Result<f64> {
    Ok(pfc(seq, &derivatives_adaptive(seq, SavGolParams::default())?))
}

pub fn pbc_of(seq: &MotionSequence, calibration: f64) -> Result<f64> {
    Ok(pbc(seq, &derivatives_adaptive(seq, SavGolParams::default())?, calibration))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub version: String,
    pub samples: usize,
    pub references: usize,
    /// Mean over samples.
    pub pfc: f64,
    /// Mean over samples, relative to `pbc_calibration`.
    pub pbc: f64,
    pub pbc_calibration: f64,
    /// Mean raw PBC of the reference corpus, when one is given.
    pub pbc_reference: Option<f64>,
    pub fid_k: Option<f64>,
    pub fid_g: Option<f64>,
    pub dist_k: Option<f64>,
    pub dist_g: Option<f64>,
    /// Mean alignment cost of each sample against the DTW target.
    pub dtw_cost: Option<f64>,
}

/// Evaluate `samples` against an optional reference corpus and an optional
/// sequence to align with. FID needs two or more sequences on each side and
/// diversity needs two or more samples; otherwise those fields are `None`.
pub fn evaluate(
    samples: &[MotionSequence],
    reference: &[MotionSequence],
    dtw_target: Option<&MotionSequence>,
    pbc_calibration: f64,
) -> Result<EvalReport> {
    let sg = SavGolParams::default();
    let mut kin = Vec::with_capacity(samples.len());
    let mut geo = Vec::with_capacity(samples.len());
    let (mut pfc_sum, mut pbc_sum) = (0.0, 0.0);
    for s in samples {
        let d = derivatives_adaptive(s, sg)?;
        pfc_sum += pfc(s, &d);
        pbc_sum += pbc(s, &d, 0.0);
        kin.push(kinetic_features(&d));
        geo.push(geometric_features(s));
    }
    let n = samples.len().max(1) as f64;

    let mut rkin = Vec::with_capacity(reference.len());
    let mut rgeo = Vec::with_capacity(reference.len());
    let mut rpbc = 0.0;
    for r in reference {
        let d = derivatives_adaptive(r, sg)?;
        rpbc += pbc(r, &d, 0.0);
        rkin.push(kinetic_features(&d));
        rgeo.push(geometric_features(r));
    }
    let fid_ok = samples.len() >= 2 && reference.len() >= 2;
    let spread = samples.len() >= 2;

    Ok(EvalReport {
        version: EVAL_VERSION.to_string(),
        samples: samples.len(),
        references: reference.len(),
        pfc: pfc_sum / n,
        pbc: pbc_sum / n - pbc_calibration,
        pbc_calibration,
        pbc_reference: (!reference.is_empty()).then(|| rpbc / reference.len() as f64),
        fid_k: if fid_ok { Some(fid(&kin, &rkin)?) } else { None },
        fid_g: if fid_ok { Some(fid(&geo, &rgeo)?) } else { None },
        dist_k: spread.then(|| diversity(&kin)),
        dist_g: spread.then(|| diversity(&geo)),
        dtw_cost: dtw_target.map(|t| samples.iter().map(|s| dtw_cost(s, t)).sum::<f64>() / n),
    })
}
