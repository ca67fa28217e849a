//! Generators for constructive formula families and random test instances.

mod random;
mod succinct;
mod yardstick;

use num_bigint::BigUint;
use thiserror::Error;

pub use random::{random_instances, random_kripke, tiny_corpus, tiny_mc_instances, Instance, Profile, TINY_SEED};
pub use succinct::{membership_check, succinct_family, succinct_family_verbatim, theta};
pub use yardstick::{
    mc_lowerbound_instance, psi_bl, psi_bl_ltl, psi_eq, psi_inc, psi_not, psi_one, sat_lowerbound_formula, theta_eq,
    yardstick_formula, yardstick_trace, YardstickSpec, DOLLAR, MAX_N, HASH1, HASH2, ONE, YARDSTICK_ATOMS, ZERO,
};

/// Largest yardstick prefix generated unless a caller raises it.
pub const DEFAULT_TRACE_BUDGET: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("trace prefix of length {length} exceeds the budget {budget}")]
    Budget { length: BigUint, budget: usize },
    #[error("n = {0} is too large to size")]
    TooLarge(usize),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
}
