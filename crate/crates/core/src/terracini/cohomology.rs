use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{mix64, sample_points, PrimeField, DEFAULT_PRIMES};
use crate::scheme::SchemeSpec;

use super::build::build_matrix;

/// Fixed default seed; reproducibility does not depend on the clock.
pub const DEFAULT_SEED: u64 = 0x5345_4341_4e54_2d31;

/// How many specializations to try before giving up on maximal rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankPolicy {
    /// Random point configurations per prime.
    pub trials: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self {
            trials: 3,
            primes: DEFAULT_PRIMES[..2].to_vec(),
            seed: DEFAULT_SEED,
        }
    }
}

impl RankPolicy {
    /// Seed of the `trial`-th configuration.
    pub fn trial_seed(&self, trial: usize) -> u64 {
        mix64(self.seed.wrapping_add(trial as u64))
    }

    /// A single `(prime, seed)` specialization, as recorded in certificates.
    pub fn single(prime: u64, seed: u64) -> Self {
        Self {
            trials: 1,
            primes: vec![prime],
            seed,
        }
    }
}

/// Key of one rank computation. `pair` and `scheme` are canonical
/// (normalized) texts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankKey {
    pub pair: String,
    pub scheme: String,
    pub z: u64,
    pub prime: u64,
    pub seed: u64,
}

impl RankKey {
    pub fn new(scheme: &SchemeSpec, prime: u64, seed: u64) -> Self {
        let normalized = scheme.normalized();
        Self {
            pair: normalized.pair().to_string(),
            scheme: normalized.descriptor(),
            z: scheme.num_points(),
            prime,
            seed,
        }
    }

    /// Same key with the seed dropped.
    pub fn prefix(&self) -> (&str, &str, u64, u64) {
        (&self.pair, &self.scheme, self.z, self.prime)
    }
}

/// Shared store of computed ranks.
pub trait RankCache: Sync {
    /// Highest rank recorded for `key` with any seed, and that seed.
    fn best(&self, key: &RankKey) -> Option<(usize, u64)>;
    fn record(&self, key: &RankKey, rank: usize, certified: bool);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRank {
    pub prime: u64,
    pub seed: u64,
    pub rank: usize,
}

/// `h^0` and `h^1` of the ideal sheaf of a scheme twisted by the embedding
/// bundle, read off the Terracini matrix.
///
/// The rank is the best over all trials, so `h0` and `h1` are upper bounds
/// for the generic values; `certified_maximal` means they are exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub pair: String,
    pub scheme: String,
    pub sections: u64,
    pub total_degree: u64,
    pub rank: usize,
    pub h0: u64,
    pub h1: u64,
    pub certified_maximal: bool,
    pub trials_used: usize,
    pub primes_used: usize,
    pub trials: Vec<TrialRank>,
}

impl CohomologyReport {
    pub fn expected_rank(&self) -> u64 {
        self.sections.min(self.total_degree)
    }

    /// `min(N, deg) - rank`, zero when certified.
    pub fn deficiency(&self) -> u64 {
        self.expected_rank() - self.rank as u64
    }

    /// The trial that reached the reported rank.
    pub fn best_trial(&self) -> Option<&TrialRank> {
        self.trials.iter().find(|t| t.rank == self.rank)
    }

    /// Number of trials run with `prime`.
    pub fn trials_with(&self, prime: u64) -> usize {
        self.trials.iter().filter(|t| t.prime == prime).count()
    }
}

/// Rank of the Terracini matrix for one `(prime, seed)` specialization.
///
/// Points are sampled for the normalized scheme, so the result depends only
/// on the cache key.
pub fn rank_once(scheme: &SchemeSpec, prime: u64, seed: u64) -> Result<usize> {
    let scheme = scheme.normalized();
    let field = PrimeField::new(prime)?;
    let points = sample_points(&scheme, &field, seed)?;
    let m = build_matrix(scheme.pair(), &points, &field)?;
    Ok(m.rank(&field))
}

/// Compute `h^0` / `h^1` of `I_Z (x) L` for the scheme `Z`, trying primes in
/// order and `policy.trials` seeds per prime. The first trial reaching
/// `min(N, deg)` ends the search.
pub fn cohomology(scheme: &SchemeSpec, policy: &RankPolicy) -> Result<CohomologyReport> {
    cohomology_cached(scheme, policy, None)
}

pub fn cohomology_cached(
    scheme: &SchemeSpec,
    policy: &RankPolicy,
    cache: Option<&dyn RankCache>,
) -> Result<CohomologyReport> {
    let n = scheme.pair().h0()? as u64;
    let deg = scheme.total_degree();
    let target = n.min(deg) as usize;
    let mut trials = Vec::new();
    let mut best = 0usize;
    let mut primes_used = 0;

    'primes: for &prime in &policy.primes {
        primes_used += 1;
        if let Some(cache) = cache {
            let key = RankKey::new(scheme, prime, 0);
            if let Some((rank, seed)) = cache.best(&key) {
                if rank == target {
                    trials.push(TrialRank { prime, seed, rank });
                    best = rank;
                    break 'primes;
                }
            }
        }
        for trial in 0..policy.trials {
            let seed = policy.trial_seed(trial);
            let rank = rank_once(scheme, prime, seed)?;
            if let Some(cache) = cache {
                cache.record(&RankKey::new(scheme, prime, seed), rank, rank == target);
            }
            trials.push(TrialRank { prime, seed, rank });
            best = best.max(rank);
            if best == target {
                break 'primes;
            }
        }
    }

    Ok(CohomologyReport {
        pair: scheme.pair().to_string(),
        scheme: scheme.descriptor(),
        sections: n,
        total_degree: deg,
        rank: best,
        h0: n - best as u64,
        h1: deg - best as u64,
        certified_maximal: best == target,
        trials_used: trials.len(),
        primes_used,
        trials,
    })
}
