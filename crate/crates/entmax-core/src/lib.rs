//! Exact distributions and Shannon entropies of sums of independent
//! finite-alphabet random variables.
//!
//! The centerpiece is the ternary maximum-entropy theorem: over all
//! products of laws on `{0, 1, 2}`, the entropy of the sum is maximized
//! by making `n - 1` variables uniform on `{0, 2}` and mixing the last
//! one between the endpoints (weight `w0`) and the midpoint. The crate
//! evaluates that closed form (and its general-alphabet extension),
//! builds the attaining configurations, and verifies both independently:
//! structurally, through exact ultra-log-concavity, Sturm real-rootedness
//! and Routh stability tests on the residue classes of the sum; and
//! numerically, through multi-start maximization over products of
//! simplices and brute-force grid search.
//!
//! Everything is generic over the arithmetic backend: IEEE `f64` for the
//! continuous quantities, exact big rationals wherever a verdict is
//! boolean (the structural tests are decided without rounding).

pub mod dist;
pub mod error;
pub mod input;
pub mod maximizer;
pub mod optimize;
pub mod poly;
pub mod residue;
pub mod rng;
pub mod scalar;
pub mod verify;

pub use dist::{
    binary_entropy, binomial_entropy, shannon_entropy, sum_law, BinomialRef, CoeffSeq, FinitePmf,
    SumConfig,
};
pub use error::{Error, Result};
pub use maximizer::{
    attaining_config, attaining_config_general, brute_force_grid, concave_weight_opt,
    conjectured_max, optimal_weight, ternary_bound, ClosedForm, GridResult,
};
pub use optimize::{numeric_maximize, numeric_maximize_with, MaxReport};
pub use residue::{
    conditional_entropy_report, hurwitz_stable, is_log_concave, is_ulc, parity_split,
    real_rooted, residue_decompose, ParityEntropyReport, ResidueSplit,
};
pub use scalar::{Rat, Scalar};
pub use verify::{
    check_parity_proposition, check_theorem, figure_distribution, reproduce_counterexample,
    run_all, run_claim, CheckResult, RunOptions,
};
