//! The five complexity scores and their frame-wise activation traces.
//!
//! Each score is computed from positions and their derivatives; each
//! activation trace is the frame-local integrand of its score and drives
//! interval detection.

mod asymmetry;
mod coordination;
mod density;
mod footwork;
mod rotation;

use serde::{Deserialize, Serialize};

pub use asymmetry::{compute_c5, mirror_offset};
pub use coordination::{compute_c4, half_intensities};
pub use density::compute_c2;
pub use footwork::{compute_c1, entropy, estimate_contacts, horizontal_range};
pub use rotation::{compute_c3, unwrap_angles};

use crate::criterion::Criterion;
use crate::derivatives::{derivatives_adaptive, DerivativeSet};
use crate::error::Result;
use crate::motion::MotionSequence;
use crate::savgol::SavGolParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FootworkWeights {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityWeights {
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationWeights {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoordinationWeights {
    /// Minimum mean intensity (m/s) both body halves need before the score
    /// switches on.
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymmetryWeights {
    pub lambda: f64,
    pub delta: f64,
    pub epsilon: f64,
}

/// Speed and height thresholds used when a sequence carries no contact
/// labels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactThresholds {
    /// m/s
    pub velocity: f64,
    /// m above the lowest foot sample
    pub height: f64,
}

impl Default for ContactThresholds {
    fn default() -> Self {
        Self { velocity: 0.15, height: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricWeights {
    pub c1: FootworkWeights,
    pub c2: DensityWeights,
    pub c3: RotationWeights,
    pub c4: CoordinationWeights,
    pub c5: AsymmetryWeights,
    pub entropy_bins: usize,
    #[serde(default)]
    pub savgol: SavGolParams,
    #[serde(default)]
    pub contacts: ContactThresholds,
}

impl Default for MetricWeights {
    fn default() -> Self {
        Self {
            c1: FootworkWeights { alpha1: 1.5, alpha2: 0.05, alpha3: 15.0 },
            c2: DensityWeights { beta: 0.005 },
            c3: RotationWeights { gamma1: 0.3, gamma2: 1.0, gamma3: 0.5 },
            c4: CoordinationWeights { delta: 0.01 },
            c5: AsymmetryWeights { lambda: 0.5, delta: 0.01, epsilon: 1e-6 },
            entropy_bins: 10,
            savgol: SavGolParams::default(),
            contacts: ContactThresholds::default(),
        }
    }
}

impl MetricWeights {
    pub fn validate(&self) -> Result<()> {
        use crate::error::MotionError::InvalidParameter;
        let all = [
            self.c1.alpha1,
            self.c1.alpha2,
            self.c1.alpha3,
            self.c2.beta,
            self.c3.gamma1,
            self.c3.gamma2,
            self.c3.gamma3,
            self.c4.delta,
            self.c5.lambda,
            self.c5.delta,
            self.c5.epsilon,
        ];
        if all.iter().any(|w| !w.is_finite()) {
            return Err(InvalidParameter("metric weights must be finite".into()));
        }
        if self.entropy_bins < 2 {
            return Err(InvalidParameter("entropy_bins must be >= 2".into()));
        }
        if self.c4.delta <= 0.0 || self.c5.delta <= 0.0 || self.c5.epsilon <= 0.0 {
            return Err(InvalidParameter("delta and epsilon must be positive".into()));
        }
        self.savgol.validate()
    }
}

/// The five scalar scores.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Scores {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
}

impl Scores {
    pub fn get(&self, c: Criterion) -> f64 {
        self.as_array()[c.index()]
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.c1, self.c2, self.c3, self.c4, self.c5]
    }
}

/// Frame-wise activation traces, each of length F.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Activations {
    pub c1: Vec<f64>,
    pub c2: Vec<f64>,
    pub c3: Vec<f64>,
    pub c4: Vec<f64>,
    pub c5: Vec<f64>,
}

impl Activations {
    pub fn get(&self, c: Criterion) -> &[f64] {
        match c {
            Criterion::Footwork => &self.c1,
            Criterion::Density => &self.c2,
            Criterion::Rotation => &self.c3,
            Criterion::Coordination => &self.c4,
            Criterion::Asymmetry => &self.c5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    #[serde(flatten)]
    pub scores: Scores,
    pub activations: Activations,
    pub weights: MetricWeights,
}

/// A score together with its activation trace.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutput {
    pub score: f64,
    pub activation: Vec<f64>,
}

/// Compute all five scores and traces for a sequence.
pub fn compute_profile(seq: &MotionSequence, weights: &MetricWeights) -> Result<ComplexityProfile> {
    weights.validate()?;
    let deriv = derivatives_adaptive(seq, weights.savgol)?;
    Ok(profile_with(seq, &deriv, weights))
}

pub(crate) fn profile_with(seq: &MotionSequence, deriv: &DerivativeSet, weights: &MetricWeights) -> ComplexityProfile {
    let c1 = footwork::footwork(seq, deriv, weights);
    let c2 = density::density(deriv, weights);
    let c3 = rotation::rotation(seq, weights);
    let c4 = coordination::coordination(deriv, weights);
    let c5 = asymmetry::asymmetry(seq, deriv, weights);
    ComplexityProfile {
        scores: Scores { c1: c1.score, c2: c2.score, c3: c3.score, c4: c4.score, c5: c5.score },
        activations: Activations {
            c1: c1.activation,
            c2: c2.activation,
            c3: c3.activation,
            c4: c4.activation,
            c5: c5.activation,
        },
        weights: *weights,
    }
}

/// Score of a single criterion (cheaper than a full profile only in that it
/// skips the other four).
pub fn compute_score(seq: &MotionSequence, criterion: Criterion, weights: &MetricWeights) -> Result<f64> {
    weights.validate()?;
    let d = derivatives_adaptive(seq, weights.savgol)?;
    Ok(match criterion {
        Criterion::Footwork => footwork::footwork(seq, &d, weights).score,
        Criterion::Density => density::density(&d, weights).score,
        Criterion::Rotation => rotation::rotation(seq, weights).score,
        Criterion::Coordination => coordination::coordination(&d, weights).score,
        Criterion::Asymmetry => asymmetry::asymmetry(seq, &d, weights).score,
    })
}

pub(crate) fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut n = 0usize;
    let mut s = 0.0;
    for x in xs {
        s += x;
        n += 1;
    }
    if n == 0 {
        0.0
    } else {
        s / n as f64
    }
}
