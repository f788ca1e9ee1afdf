//! Complexity analysis and rule-based simplification of dance motion on the
//! SMPL 24-joint skeleton.

pub mod api;
pub mod complexity;
pub mod criterion;
pub mod derivatives;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod intervals;
pub mod io;
pub mod motion;
pub mod savgol;
pub mod simplify;
pub mod skeleton;
pub mod trends;
pub mod vec3;

pub use complexity::{compute_profile, compute_score, ComplexityProfile, MetricWeights, Scores};
pub use criterion::Criterion;
pub use error::{MotionError, Result};
pub use motion::MotionSequence;
pub use simplify::{simplify, SimplifyConfig, SimplifyResult};
pub use skeleton::SkeletonSpec;
