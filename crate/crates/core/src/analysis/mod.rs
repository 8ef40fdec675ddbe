//! Desk-scale cryptanalysis oracles.
//!
//! Every search here is exhaustive and guarded; these are instruments for
//! checking the scheme's security arguments at toy sizes, not attacks.

pub mod bruteforce;
pub mod fratio;
pub mod indcpa;
pub mod poly;
pub mod ringsearch;
pub mod system;

pub use bruteforce::{brute_force_solutions, SolutionSet, SEARCH_LIMIT};
pub use fratio::{recover_f_ratio, FactorCandidate};
pub use indcpa::{ind_cpa_game, Adversary, Challenge, ConstantGuess, GameParams, GameReport, RandomGuess, SolutionCounting};
pub use ringsearch::{ring_key_search, ring_key_search_in, RingCandidate, RingSearchReport};
pub use system::{normalize_system, reduce_mod_p, reduce_to_single, Congruence, ModPSystem, ReducedNormalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("right-hand side is zero modulo p; normalization undefined")]
    ZeroRhs,
    #[error("no noise variable can be eliminated")]
    EliminationFailed,
    #[error("search space {p}^{variables} exceeds the limit of {limit}")]
    SearchSpaceTooLarge { p: u64, variables: usize, limit: u64 },
    #[error("ring of {bits} bits exceeds the search limit of {limit} bits")]
    RingTooLarge { bits: u32, limit: u32 },
    #[error("map is not of the form b·f")]
    NoConsistentRatio,
    #[error("input shapes do not match")]
    ShapeMismatch,
    #[error("input is not reduced modulo p")]
    NotReduced,
}
