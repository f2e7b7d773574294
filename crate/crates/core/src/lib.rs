//! Exact metric-distortion analysis for ranked ballots that carry preference
//! intensities.
//!
//! Every algorithm is generic over [`Scalar`]; [`Rational`] gives exact
//! results and is what the convenience aliases below use.

pub mod distortion;
pub mod error;
pub mod format;
pub mod instances;
pub mod line;
pub mod lp;
pub mod matching;
pub mod metric;
pub mod profile;
pub mod rational;
pub mod scalar;
pub mod scoring_game;

pub use distortion::{
    distortion, distortion_all, intensity_aware_opt, intensity_oblivious_opt, poii, poii_report,
    verify_dual_certificate, DualCertificate, ExtendedValue,
};
pub use error::{Error, Result};
pub use instances::{generate, verify, InstanceKind, LowerBoundInstance};
pub use line::{eval_d, tal_winner, LineCounts};
pub use matching::{general_winner, psm_winner, robust_winner, ScoringVector};
pub use metric::{
    check_consistency, check_triangle, cost_ratio, social_cost, ConsistencyMode, ConsistencyViolation,
    MetricMatrix, TriangleViolation, ViolationKind,
};
pub use profile::{
    default_names, intensity_rank, plurality_score, ElicitationMode, Intensity, IntensivePreference, Profile,
};
pub use rational::{parse_rational, ratio, to_decimal, Rational};
pub use scalar::Scalar;
pub use scoring_game::{game_value, optimal_vector, payoff_matrix, recurrences};

/// Floating-point profile for exploratory runs.
pub type ProfileF64 = Profile<f64>;
/// Floating-point metric for exploratory runs.
pub type MetricF64 = MetricMatrix<f64>;
