//! Rule-based simplification: detect complex intervals per criterion, apply
//! the matching rule, and keep the edit only if that criterion's score drops.

mod post;
mod rules;

use serde::{Deserialize, Serialize};

pub use post::{decay_offset, reattach_root, reattach_root_in_place, smooth_discontinuity, smooth_discontinuity_in_place};
pub use rules::{
    compress_steps, directional_change, distance_compression, flip_steps, orientation_stabilization, stretch_steps,
    velocity_reduction, PsiTarget,
};

use crate::complexity::{compute_profile, ComplexityProfile, MetricWeights};
use crate::criterion::Criterion;
use crate::error::{MotionError, Result};
use crate::intervals::{detect_intervals, percentile, ComplexInterval};
use crate::motion::MotionSequence;
use crate::savgol::SavGolParams;
use crate::skeleton::{LEFT_WRIST, RIGHT_WRIST};
use crate::trends::{detect_trends, intersection, overlap_ratio, MotionTrend, DEFAULT_ALPHA, DEFAULT_EPSILON};

/// Percentile of the activation used as the interval threshold when none is
/// configured.
pub const AUTO_TAU_PERCENTILE: f64 = 75.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimplifyConfig {
    pub epsilon: f64,
    pub alpha: f64,
    /// Activation thresholds. `None` gates on a positive score and uses the
    /// 75th percentile of the activation for intervals.
    pub tau: [Option<f64>; 5],
    /// Minimum interval length in frame steps. `None` means a quarter second.
    pub min_len: [Option<usize>; 5],
    pub k: f64,
    pub lambda_slow: usize,
    pub psi_target: PsiTarget,
    /// Used for asymmetry intervals where no wrist trend pair is available.
    pub flip_vector: [i8; 3],
    pub criteria_enabled: [bool; 5],
    pub sg_window: usize,
    pub sg_order: usize,
}

impl Default for SimplifyConfig {
    fn default() -> Self {
        let sg = SavGolParams::default();
        Self {
            epsilon: DEFAULT_EPSILON,
            alpha: DEFAULT_ALPHA,
            tau: [None; 5],
            min_len: [None; 5],
            k: 0.5,
            lambda_slow: 2,
            psi_target: PsiTarget::FirstFrame,
            flip_vector: [-1, 1, 1],
            criteria_enabled: [true; 5],
            sg_window: sg.window,
            sg_order: sg.order,
        }
    }
}

impl SimplifyConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(MotionError::InvalidParameter(m.into()));
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return bad("epsilon must be positive");
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return bad("alpha must be in (0, 1]");
        }
        if self.tau.iter().flatten().any(|t| !t.is_finite()) {
            return bad("tau must be finite");
        }
        if self.min_len.iter().flatten().any(|&l| l < 2) {
            return bad("min_len must be >= 2");
        }
        if !(0.0..=1.0).contains(&self.k) {
            return bad("k must be in [0, 1]");
        }
        if self.lambda_slow < 2 {
            return bad("lambda_slow must be >= 2");
        }
        if let PsiTarget::Radians(r) = self.psi_target {
            if !r.is_finite() {
                return bad("psi_target must be finite");
            }
        }
        if self.flip_vector.iter().any(|&v| v != 1 && v != -1) {
            return bad("flip_vector entries must be -1 or 1");
        }
        self.savgol().validate()
    }

    pub fn savgol(&self) -> SavGolParams {
        SavGolParams { window: self.sg_window, order: self.sg_order }
    }

    /// Metric weights with this config's filter settings.
    pub fn weights(&self) -> MetricWeights {
        MetricWeights { savgol: self.savgol(), ..MetricWeights::default() }
    }

    pub fn min_len_for(&self, c: Criterion, fps: f64) -> usize {
        self.min_len[c.index()].unwrap_or_else(|| ((0.25 * fps).round() as usize).max(2))
    }
}

/// What one stage of the pipeline did.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageRecord {
    pub criterion: Criterion,
    pub attempted: bool,
    pub accepted: bool,
    pub score_before: f64,
    /// Score of the candidate edit, when one was built.
    pub score_candidate: Option<f64>,
    pub tau: Option<f64>,
    pub min_len: usize,
    pub intervals: Vec<ComplexInterval>,
    /// Flip vector used per interval (asymmetry only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub flips: Option<Vec<[i8; 3]>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplifyResult {
    pub motion: MotionSequence,
    pub before: ComplexityProfile,
    pub after: ComplexityProfile,
    pub applied: Vec<StageRecord>,
}

/// Serializable summary of a run, without the output motion.
#[derive(Debug, Clone, Serialize)]
pub struct SimplifyReport<'a> {
    pub before: &'a ComplexityProfile,
    pub after: &'a ComplexityProfile,
    pub applied: &'a [StageRecord],
}

impl SimplifyResult {
    pub fn report(&self) -> SimplifyReport<'_> {
        SimplifyReport { before: &self.before, after: &self.after, applied: &self.applied }
    }
}

/// Flip vector for one asymmetry interval: negate the axes on which the
/// best-overlapping pair of left and right wrist trends disagree.
pub fn derive_flip(trends: &[MotionTrend], span: (usize, usize), alpha: f64) -> Option<[i8; 3]> {
    let near = |joint: usize| {
        trends
            .iter()
            .filter(move |t| t.joint == joint && intersection((t.start, t.end), span) > 0)
    };
    let mut best: Option<(usize, &MotionTrend, &MotionTrend)> = None;
    for l in near(LEFT_WRIST) {
        for r in near(RIGHT_WRIST) {
            let (ls, rs) = ((l.start, l.end), (r.start, r.end));
            if overlap_ratio(ls, rs) < alpha {
                continue;
            }
            let shared = (ls.0.max(rs.0), ls.1.min(rs.1));
            let score = intersection(shared, span);
            if best.is_none_or(|b| score > b.0) {
                best = Some((score, l, r));
            }
        }
    }
    best.map(|(_, l, r)| {
        std::array::from_fn(|a| if l.direction[a].signum() * r.direction[a].signum() < 0 { -1 } else { 1 })
    })
}

/// Run the five stages in order: velocity reduction (footwork), distance
/// compression (density), orientation stabilization (rotation), distance
/// compression (coordination), directional change (asymmetry).
pub fn simplify(seq: &MotionSequence, config: &SimplifyConfig) -> Result<SimplifyResult> {
    config.validate()?;
    let weights = config.weights();
    let before = compute_profile(seq, &weights)?;
    let trends = detect_trends(seq, config.epsilon, config.alpha);

    let mut gen = seq.clone();
    let mut current = before.clone();
    let mut applied = Vec::with_capacity(5);

    for c in Criterion::ALL {
        let i = c.index();
        let score_before = current.scores.get(c);
        let min_len = config.min_len_for(c, seq.fps());
        let mut rec = StageRecord {
            criterion: c,
            attempted: false,
            accepted: false,
            score_before,
            score_candidate: None,
            tau: config.tau[i],
            min_len,
            intervals: Vec::new(),
            flips: None,
        };
        let gate = config.tau[i].unwrap_or(0.0);
        if !config.criteria_enabled[i] || score_before <= gate {
            applied.push(rec);
            continue;
        }
        rec.attempted = true;
        let tau = config.tau[i].unwrap_or_else(|| percentile(current.activations.get(c), AUTO_TAU_PERCENTILE));
        rec.tau = Some(tau);
        rec.intervals = detect_intervals(&gen, &current, c, tau, min_len, &trends)?;
        if rec.intervals.is_empty() {
            applied.push(rec);
            continue;
        }

        let candidate = match c {
            Criterion::Footwork => velocity_reduction(&gen, &rec.intervals, config.lambda_slow),
            Criterion::Density | Criterion::Coordination => distance_compression(&gen, &rec.intervals, config.k),
            Criterion::Rotation => orientation_stabilization(&gen, &rec.intervals, config.psi_target),
            Criterion::Asymmetry => {
                let mut out = gen.clone();
                let mut flips = Vec::with_capacity(rec.intervals.len());
                for iv in &rec.intervals {
                    let flip = derive_flip(&trends, (iv.start, iv.end), config.alpha).unwrap_or(config.flip_vector);
                    out = directional_change(&out, std::slice::from_ref(iv), flip);
                    flips.push(flip);
                }
                rec.flips = Some(flips);
                out
            }
        };
        let next = compute_profile(&candidate, &weights)?;
        let score = next.scores.get(c);
        rec.score_candidate = Some(score);
        if score < score_before {
            rec.accepted = true;
            gen = candidate;
            current = next;
        }
        applied.push(rec);
    }

    let after = if applied.iter().any(|r| r.accepted) { compute_profile(&gen, &weights)? } else { before.clone() };
    Ok(SimplifyResult { motion: gen, before, after, applied })
}
