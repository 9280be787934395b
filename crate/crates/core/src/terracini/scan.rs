use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scheme::SchemeSpec;
use crate::space::SegreVeronesePair;

use super::cohomology::{cohomology_cached, CohomologyReport, RankCache, RankPolicy};

/// Minimum number of primes and seeds per prime that must all show the
/// same deficiency before it is reported as probable defectivity.
pub const MIN_PRIMES_FOR_DEFECT: usize = 2;
pub const MIN_SEEDS_FOR_DEFECT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictStatus {
    NotDefectiveCertified,
    ProbablyDefective { defect: u64 },
    Inconclusive,
}

/// Where a verdict came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A rank computation at this `z`.
    Computed { rank: usize, expected_rank: u64 },
    /// Implied by a certified computation at `from`: independent conditions
    /// at `from` pass to fewer points, a filled secant to more.
    Implied { from: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectivityVerdict {
    pub z: u64,
    #[serde(flatten)]
    pub status: VerdictStatus,
    pub evidence: Evidence,
}

/// Turn a report for `z` full double points into a verdict.
pub fn classify(report: &CohomologyReport, policy: &RankPolicy) -> VerdictStatus {
    if report.certified_maximal {
        return VerdictStatus::NotDefectiveCertified;
    }
    let enough_primes =
        policy.primes.len() >= MIN_PRIMES_FOR_DEFECT && report.primes_used >= MIN_PRIMES_FOR_DEFECT;
    let enough_seeds = policy
        .primes
        .iter()
        .all(|&p| report.trials_with(p) >= MIN_SEEDS_FOR_DEFECT);
    if enough_primes && enough_seeds {
        VerdictStatus::ProbablyDefective {
            defect: report.deficiency(),
        }
    } else {
        VerdictStatus::Inconclusive
    }
}

/// Certified facts at one `z` that propagate to other values.
#[derive(Debug, Clone, Copy)]
struct Anchor {
    h1_vanishes: bool,
    h0_vanishes: bool,
}

fn implied_by(anchors: &BTreeMap<u64, Anchor>, z: u64) -> Option<u64> {
    anchors
        .range(z..)
        .find(|(_, a)| a.h1_vanishes)
        .map(|(&w, _)| w)
        .or_else(|| {
            anchors
                .range(..=z)
                .rev()
                .find(|(_, a)| a.h0_vanishes)
                .map(|(&w, _)| w)
        })
}

/// Verdicts for every `z` in `z_range` (default `1..=z_hi`).
///
/// The critical values are computed first; a certified `h^1 = 0` covers all
/// smaller `z` and a certified `h^0 = 0` all larger ones, so a
/// non-defective pair costs at most two rank computations. Remaining values
/// are computed in parallel.
pub fn defect_scan(
    pair: &SegreVeronesePair,
    z_range: Option<RangeInclusive<u64>>,
    policy: &RankPolicy,
    cache: Option<&dyn RankCache>,
) -> Result<Vec<DefectivityVerdict>> {
    let crit = pair.critical_z()?;
    let range = z_range.unwrap_or(1..=crit.z_hi.max(1));
    let (start, end) = (*range.start(), *range.end());
    if start > end {
        return Ok(Vec::new());
    }

    let mut anchor_zs: Vec<u64> = crit
        .values()
        .into_iter()
        .filter(|z| range.contains(z))
        .collect();
    if end < crit.z_lo {
        anchor_zs.push(end);
    }
    if start > crit.z_hi {
        anchor_zs.push(start);
    }
    anchor_zs.retain(|&z| z >= 1);

    let run = |z: u64| -> Result<(u64, CohomologyReport)> {
        let scheme = SchemeSpec::double_points(pair, z);
        Ok((z, cohomology_cached(&scheme, policy, cache)?))
    };

    let mut computed: BTreeMap<u64, CohomologyReport> = anchor_zs
        .par_iter()
        .map(|&z| run(z))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();

    let anchors = |computed: &BTreeMap<u64, CohomologyReport>| -> BTreeMap<u64, Anchor> {
        computed
            .iter()
            .filter(|(_, r)| r.certified_maximal)
            .map(|(&z, r)| {
                (
                    z,
                    Anchor {
                        h1_vanishes: r.h1 == 0,
                        h0_vanishes: r.h0 == 0,
                    },
                )
            })
            .collect()
    };
    let known = anchors(&computed);

    let missing: Vec<u64> = range
        .clone()
        .filter(|&z| z >= 1 && !computed.contains_key(&z) && implied_by(&known, z).is_none())
        .collect();
    let extra = missing
        .par_iter()
        .map(|&z| run(z))
        .collect::<Result<Vec<_>>>()?;
    computed.extend(extra);
    let known = anchors(&computed);

    Ok(range
        .filter(|&z| z >= 1)
        .map(|z| match computed.get(&z) {
            Some(report) => DefectivityVerdict {
                z,
                status: classify(report, policy),
                evidence: Evidence::Computed {
                    rank: report.rank,
                    expected_rank: report.expected_rank(),
                },
            },
            None => DefectivityVerdict {
                z,
                status: VerdictStatus::NotDefectiveCertified,
                evidence: Evidence::Implied {
                    from: implied_by(&known, z).expect("uncomputed values are implied"),
                },
            },
        })
        .collect())
}

/// Overall status of a scan: probably defective if any `z` is, certified
/// only if every `z` is.
pub fn summarize(verdicts: &[DefectivityVerdict]) -> VerdictStatus {
    if let Some(d) = verdicts
        .iter()
        .find(|v| matches!(v.status, VerdictStatus::ProbablyDefective { .. }))
    {
        return d.status;
    }
    if verdicts
        .iter()
        .all(|v| v.status == VerdictStatus::NotDefectiveCertified)
    {
        VerdictStatus::NotDefectiveCertified
    } else {
        VerdictStatus::Inconclusive
    }
}
