//! Terracini matrices of fat-point schemes and the cohomology read off
//! their rank.

mod build;
mod cohomology;
mod lemma;
mod monomial;
mod scan;

pub use build::build_matrix;
pub use cohomology::{
    cohomology, cohomology_cached, rank_once, CohomologyReport, RankCache, RankKey, RankPolicy,
    TrialRank, DEFAULT_SEED,
};
pub use lemma::{verify_lemma_instance, Hypothesis, LemmaId, LemmaParams, LemmaReport};
pub use monomial::factor_monomials;
pub use scan::{
    classify, defect_scan, summarize, DefectivityVerdict, Evidence, VerdictStatus,
    MIN_PRIMES_FOR_DEFECT, MIN_SEEDS_FOR_DEFECT,
};
