//! The constructive pipelines: the density step `a + p(b)` (and its
//! `a + c·p(b)` variant) and the primitive-element search.

mod candidates;
mod density;
mod primitive;

pub use candidates::candidates;
pub use density::{density_step, density_step_with_factor, DensityResult};
pub use primitive::{find_primitive, lambda_search, reduce_to_two, PrimitiveResult, Rejection};

pub(crate) use candidates::{first_candidate, random_rational};
pub(crate) use density::search as density_search;

use crate::field::{RankMethod, RankOptions};
use crate::par::Exec;

/// Caps and seeds shared by every search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_p_degree: u32,
    pub max_coeff_height: u32,
    /// Numerator and denominator bound of sampled λ values.
    pub lambda_height: u32,
    pub retries: u32,
    pub seed: u64,
    pub membership_degree_cap: u32,
    /// Recompute accepted transcendence degrees symbolically.
    pub symbolic_confirm: bool,
    /// Use symbolic rank everywhere instead of random evaluation.
    pub symbolic_rank: bool,
    /// Hard cap on the number of enumerated `p` candidates.
    pub max_candidates: usize,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_p_degree: 6,
            max_coeff_height: 8,
            lambda_height: 100,
            retries: 32,
            seed: 0,
            membership_degree_cap: 8,
            symbolic_confirm: true,
            symbolic_rank: false,
            max_candidates: 4096,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn exec(&self) -> Exec {
        Exec::from_flag(self.parallel)
    }

    /// Rank options for the sub-computation identified by `salt`.
    pub fn rank_options(&self, salt: u64) -> RankOptions {
        RankOptions {
            method: if self.symbolic_rank { RankMethod::Symbolic } else { RankMethod::Randomized },
            seed: crate::field::mix_seed(self.seed, salt),
            retries: self.retries,
            ..RankOptions::default()
        }
    }
}
