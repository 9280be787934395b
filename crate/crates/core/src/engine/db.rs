use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::SegreVeronesePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Source {
    Ah,
    Lp,
    Go,
    Cgg,
    BaurDraisma,
    ComputerCheck,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Source::Ah => "AH",
            Source::Lp => "LP",
            Source::Go => "GO",
            Source::Cgg => "CGG",
            Source::BaurDraisma => "BAUR_DRAISMA",
            Source::ComputerCheck => "COMPUTER_CHECK",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FactVerdict {
    Defective,
    NotDefective,
}

/// A family of pairs with a known verdict. Matching is done on the
/// normalized pair, whose factors are sorted by `(n, d)` descending.
#[derive(Debug, Clone, Serialize)]
pub struct KnownFact {
    pub pattern: &'static str,
    pub verdict: FactVerdict,
    pub source: Source,
    #[serde(skip)]
    matches: fn(&[(u32, u32)]) -> bool,
}

impl KnownFact {
    pub fn matches(&self, pair: &SegreVeronesePair) -> bool {
        let factors: Vec<(u32, u32)> = pair.normalized().factors().collect();
        (self.matches)(&factors)
    }
}

fn ah_exception(f: &[(u32, u32)]) -> bool {
    matches!(f, [(n, 2)] if *n >= 2) || matches!(f, [(2, 4) | (3, 4) | (4, 3) | (4, 4)])
}

fn lp_exception(f: &[(u32, u32)]) -> bool {
    match f {
        [(1, s), (1, 2)] => s % 2 == 0,
        [(1, 2), (1, 2), (1, 2)] => true,
        _ => false,
    }
}

fn all_p1(f: &[(u32, u32)]) -> bool {
    f.len() >= 2 && f.iter().all(|&(n, d)| n == 1 && d >= 2)
}

fn bd_family(f: &[(u32, u32)]) -> bool {
    matches!(f, [(2, t), (1, s)] if *t >= 2 && *s >= 2)
}

fn bd_exception(f: &[(u32, u32)]) -> bool {
    matches!(f, [(2, 2), (1, s)] if s % 2 == 0)
}

/// Pairs whose non-defectivity rests on a published computer check.
const CHECKED_PAIRS: &[(&[u32], &[u32])] = &[
    (&[2, 2], &[2, 3]),
    (&[2, 2], &[2, 4]),
    (&[2, 2], &[2, 5]),
    (&[2, 2], &[2, 6]),
    (&[2, 2], &[2, 7]),
    (&[2, 2], &[2, 8]),
    (&[2, 2], &[2, 9]),
    (&[2, 2, 2], &[2, 2, 1]),
    (&[2, 2, 2], &[2, 2, 2]),
    (&[2, 2, 1], &[2, 2, 3]),
    (&[2, 2, 1], &[2, 2, 4]),
    (&[1, 1, 2], &[4, 4, 2]),
    (&[1, 1, 2], &[6, 4, 2]),
    (&[1, 1, 2], &[8, 4, 2]),
    (&[1, 1, 2], &[10, 4, 2]),
    (&[1, 1, 2], &[6, 6, 2]),
    (&[1, 1, 2], &[4, 2, 2]),
    (&[1, 1, 2], &[6, 2, 2]),
    (&[1, 1, 2], &[8, 2, 2]),
    (&[1, 1, 2], &[10, 2, 2]),
    (&[1, 2, 2], &[2, 2, 2]),
    (&[1, 2, 2], &[3, 2, 2]),
    (&[3, 2], &[3, 2]),
    (&[1, 1, 1, 2], &[2, 2, 2, 2]),
];

/// The cited classifications, indexed by source.
#[derive(Debug, Clone, Serialize)]
pub struct KnowledgeBase {
    facts: Vec<KnownFact>,
    #[serde(skip)]
    checked: Vec<SegreVeronesePair>,
}

impl KnowledgeBase {
    /// The cited classifications only. Panics if they contradict each
    /// other, which would be a bug in the table.
    pub fn standard() -> Self {
        static STANDARD: OnceLock<KnowledgeBase> = OnceLock::new();
        STANDARD
            .get_or_init(|| {
                let kb = Self {
                    facts: standard_facts(),
                    checked: Vec::new(),
                };
                kb.check_consistency(small_pairs())
                    .expect("built-in facts are consistent");
                kb
            })
            .clone()
    }

    /// [`KnowledgeBase::standard`] plus the published computer checks,
    /// taken on trust.
    pub fn with_computer_checks() -> Self {
        let mut kb = Self::standard();
        kb.checked = CHECKED_PAIRS
            .iter()
            .map(|(n, d)| {
                SegreVeronesePair::new(n.to_vec(), d.to_vec())
                    .expect("valid pair")
                    .normalized()
            })
            .collect();
        kb
    }

    pub fn facts(&self) -> &[KnownFact] {
        &self.facts
    }

    /// Every fact matching `pair`, in table order.
    pub fn matching(&self, pair: &SegreVeronesePair) -> Vec<(FactVerdict, Source)> {
        let mut out: Vec<(FactVerdict, Source)> = self
            .facts
            .iter()
            .filter(|f| f.matches(pair))
            .map(|f| (f.verdict, f.source))
            .collect();
        if self.checked.contains(&pair.normalized()) {
            out.push((FactVerdict::NotDefective, Source::ComputerCheck));
        }
        out
    }

    pub fn lookup(&self, pair: &SegreVeronesePair) -> Option<(FactVerdict, Source)> {
        self.matching(pair).into_iter().next()
    }

    /// Fails if some pair matches facts with different verdicts.
    pub fn check_consistency(
        &self,
        pairs: impl IntoIterator<Item = SegreVeronesePair>,
    ) -> Result<()> {
        for pair in pairs {
            let found = self.matching(&pair);
            if found.windows(2).any(|w| w[0].0 != w[1].0) {
                return Err(Error::InvalidPair(format!(
                    "contradictory known facts for {pair}: {found:?}"
                )));
            }
        }
        Ok(())
    }
}

fn standard_facts() -> Vec<KnownFact> {
    use FactVerdict::*;
    vec![
        KnownFact {
            pattern: "P^n with O(2), n >= 2; P^2 and P^3 with O(4); P^4 with O(3), O(4)",
            verdict: Defective,
            source: Source::Ah,
            matches: ah_exception,
        },
        KnownFact {
            pattern: "P^n with O(d), d >= 2, outside the exceptions",
            verdict: NotDefective,
            source: Source::Ah,
            matches: |f| matches!(f, [(_, d)] if *d >= 2) && !ah_exception(f),
        },
        KnownFact {
            pattern: "P1 x P1 with O(2, 2a); (P1)^3 with O(2, 2, 2)",
            verdict: Defective,
            source: Source::Lp,
            matches: lp_exception,
        },
        KnownFact {
            pattern: "(P1)^j, j >= 2, all degrees >= 2, outside the exceptions",
            verdict: NotDefective,
            source: Source::Lp,
            matches: |f| all_p1(f) && !lp_exception(f),
        },
        KnownFact {
            pattern: "P^m x P^n with O(d, e), d, e >= 3",
            verdict: NotDefective,
            source: Source::Go,
            matches: |f| matches!(f, [(_, d), (_, e)] if *d >= 3 && *e >= 3),
        },
        KnownFact {
            pattern: "P2 x P2 with O(2, 2); P1 x P1 x P2 with O(2, 2, 2)",
            verdict: Defective,
            source: Source::Cgg,
            matches: |f| matches!(f, [(2, 2), (2, 2)] | [(2, 2), (1, 2), (1, 2)]),
        },
        KnownFact {
            pattern: "P1 x P2 with O(2a, 2)",
            verdict: Defective,
            source: Source::BaurDraisma,
            matches: bd_exception,
        },
        KnownFact {
            pattern: "P1 x P2 with O(s, t), s, t >= 2, outside the exceptions",
            verdict: NotDefective,
            source: Source::BaurDraisma,
            matches: |f| bd_family(f) && !bd_exception(f),
        },
    ]
}

/// Every pair with at most three factors, dimensions `1..=4` and degrees
/// `1..=6`, up to permutation.
fn small_pairs() -> impl Iterator<Item = SegreVeronesePair> {
    let factors: Vec<(u32, u32)> = (1..=4).flat_map(|n| (1..=6).map(move |d| (n, d))).collect();
    let mut out = Vec::new();
    for (i, &a) in factors.iter().enumerate() {
        out.push(vec![a]);
        for (j, &b) in factors.iter().enumerate().skip(i) {
            out.push(vec![a, b]);
            for &c in &factors[j..] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out.into_iter().map(|fs| {
        let (n, d): (Vec<u32>, Vec<u32>) = fs.into_iter().unzip();
        SegreVeronesePair::new(n, d).expect("valid pair")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(n: &[u32], d: &[u32]) -> SegreVeronesePair {
        SegreVeronesePair::new(n.to_vec(), d.to_vec()).unwrap()
    }

    #[test]
    fn lookup_examples() {
        let kb = KnowledgeBase::standard();
        assert_eq!(
            kb.lookup(&pair(&[2], &[4])),
            Some((FactVerdict::Defective, Source::Ah))
        );
        assert_eq!(
            kb.lookup(&pair(&[2, 2], &[3, 4])),
            Some((FactVerdict::NotDefective, Source::Go))
        );
        assert_eq!(
            kb.lookup(&pair(&[1, 1], &[2, 6])),
            Some((FactVerdict::Defective, Source::Lp))
        );
        assert_eq!(
            kb.lookup(&pair(&[1, 1], &[6, 2])),
            Some((FactVerdict::Defective, Source::Lp))
        );
        assert_eq!(
            kb.lookup(&pair(&[2, 2], &[2, 2])),
            Some((FactVerdict::Defective, Source::Cgg))
        );
        assert_eq!(
            kb.lookup(&pair(&[1, 2, 1], &[2, 2, 2])),
            Some((FactVerdict::Defective, Source::Cgg))
        );
        assert_eq!(
            kb.lookup(&pair(&[1, 2], &[4, 2])),
            Some((FactVerdict::Defective, Source::BaurDraisma))
        );
        assert_eq!(
            kb.lookup(&pair(&[2, 1], &[2, 3])),
            Some((FactVerdict::NotDefective, Source::BaurDraisma))
        );
        assert_eq!(
            kb.lookup(&pair(&[2], &[3])),
            Some((FactVerdict::NotDefective, Source::Ah))
        );
        assert_eq!(
            kb.lookup(&pair(&[4], &[3])),
            Some((FactVerdict::Defective, Source::Ah))
        );
        assert_eq!(
            kb.lookup(&pair(&[1], &[2])),
            Some((FactVerdict::NotDefective, Source::Ah))
        );
        assert_eq!(
            kb.lookup(&pair(&[1, 1, 1], &[2, 2, 2])),
            Some((FactVerdict::Defective, Source::Lp))
        );
        assert_eq!(
            kb.lookup(&pair(&[1, 1, 1], &[2, 2, 3])),
            Some((FactVerdict::NotDefective, Source::Lp))
        );
    }

    #[test]
    fn families_not_covered() {
        let kb = KnowledgeBase::standard();
        assert_eq!(kb.lookup(&pair(&[2, 2, 2], &[2, 2, 2])), None);
        assert_eq!(kb.lookup(&pair(&[2, 2], &[2, 3])), None);
        assert_eq!(kb.lookup(&pair(&[3, 2], &[3, 2])), None);
        assert_eq!(kb.lookup(&pair(&[2], &[1])), None);
    }

    #[test]
    fn computer_checks_are_opt_in() {
        let kb = KnowledgeBase::with_computer_checks();
        assert_eq!(
            kb.lookup(&pair(&[2, 2, 2], &[2, 2, 2])),
            Some((FactVerdict::NotDefective, Source::ComputerCheck))
        );
        assert_eq!(
            kb.lookup(&pair(&[2, 3], &[2, 3])),
            Some((FactVerdict::NotDefective, Source::ComputerCheck))
        );
    }

    #[test]
    fn contradictions_are_detected() {
        let mut kb = KnowledgeBase::standard();
        kb.facts.push(KnownFact {
            pattern: "bogus",
            verdict: FactVerdict::NotDefective,
            source: Source::Cgg,
            matches: |f| matches!(f, [(2, 2)]),
        });
        assert!(kb.check_consistency([pair(&[2], &[2])]).is_err());
        assert!(kb.check_consistency([pair(&[2], &[3])]).is_ok());
    }
}
