use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::claims::in_a4_table;
use crate::error::{Error, Result};
use crate::scheme::SchemeSpec;
use crate::space::SegreVeronesePair;
use crate::terracini::{cohomology_cached, RankCache, RankPolicy};

use super::certificate::{rule_arithmetic, CertNode, Certificate, Hypotheses, Rule, Verdict};
use super::db::KnowledgeBase;

/// Largest number of sections for which the numeric fallback runs.
pub const DEFAULT_BUDGET: usize = 600;

/// Outcome of testing a single-step rule on a base pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleCheck {
    pub rule: Rule,
    pub base: SegreVeronesePair,
    pub hypotheses: Hypotheses,
    pub applicable: bool,
}

pub struct Engine<'c> {
    kb: KnowledgeBase,
    policy: RankPolicy,
    budget: usize,
    cache: Option<&'c dyn RankCache>,
    memo: HashMap<SegreVeronesePair, CertNode>,
}

impl Default for Engine<'_> {
    fn default() -> Self {
        Self::new(
            KnowledgeBase::standard(),
            RankPolicy::default(),
            DEFAULT_BUDGET,
        )
    }
}

impl<'c> Engine<'c> {
    pub fn new(kb: KnowledgeBase, policy: RankPolicy, budget: usize) -> Self {
        Self {
            kb,
            policy,
            budget,
            cache: None,
            memo: HashMap::new(),
        }
    }

    pub fn with_cache(mut self, cache: &'c dyn RankCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn knowledge_base(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Certificate for `pair`, or an INCONCLUSIVE root.
    pub fn derive(&mut self, pair: &SegreVeronesePair) -> Result<Certificate> {
        let node = self.node(&pair.normalized())?;
        Ok(Certificate::new(compact(node)))
    }

    /// Whether `(base x P1, L[t])` follows for every `t >= 2`.
    pub fn rule_a41_applicable(&mut self, base: &SegreVeronesePair) -> Result<RuleCheck> {
        self.rule_check(Rule::A41, base)
    }

    /// Whether `(base x P2, L[t])` follows for every `t >= 2`.
    pub fn rule_a5_applicable(&mut self, base: &SegreVeronesePair) -> Result<RuleCheck> {
        self.rule_check(Rule::A5, base)
    }

    fn rule_check(&mut self, rule: Rule, base: &SegreVeronesePair) -> Result<RuleCheck> {
        let base = base.normalized();
        let r = base.dim();
        let alpha = base.h0()?;
        let (mut hypotheses, arithmetic) = rule_arithmetic(rule, r, alpha);
        let verdict = self.node(&base)?.verdict;
        let not_defective = verdict == Verdict::NotDefective;
        hypotheses.insert("r".into(), json!(r));
        hypotheses.insert("alpha".into(), json!(narrow(alpha)?));
        hypotheses.insert("base_verdict".into(), json!(verdict));
        hypotheses.insert("base_not_defective".into(), json!(not_defective));
        Ok(RuleCheck {
            rule,
            base,
            hypotheses,
            applicable: arithmetic && not_defective,
        })
    }

    fn node(&mut self, pair: &SegreVeronesePair) -> Result<CertNode> {
        if let Some(hit) = self.memo.get(pair) {
            return Ok(hit.clone());
        }
        let node = self.search(pair)?;
        log::debug!("{pair}: {:?} via {:?}", node.verdict, node.rule);
        self.memo.insert(pair.clone(), node.clone());
        Ok(node)
    }

    fn search(&mut self, pair: &SegreVeronesePair) -> Result<CertNode> {
        if let Some((verdict, source)) = self.kb.lookup(pair) {
            return Ok(CertNode {
                pair: pair.clone(),
                verdict: verdict.into(),
                rule: Some(Rule::DbLookup),
                hypotheses: [("source".to_string(), json!(source.tag()))].into(),
                seeds: vec![],
                prime: None,
                children: vec![],
            });
        }
        for (index, n, t) in peel_candidates(pair) {
            let rule = if n == 2 { Rule::A5 } else { Rule::A41 };
            let base = pair.without_factor(index)?.normalized();
            let r = base.dim();
            let alpha = base.h0()?;
            let (mut hypotheses, holds) = rule_arithmetic(rule, r, alpha);
            if !holds {
                continue;
            }
            let child = self.node(&base)?;
            if child.verdict != Verdict::NotDefective {
                continue;
            }
            hypotheses.insert("n".into(), json!(n));
            hypotheses.insert("t".into(), json!(t));
            hypotheses.insert("r".into(), json!(r));
            hypotheses.insert("alpha".into(), json!(narrow(alpha)?));
            hypotheses.insert("base_not_defective".into(), json!(true));
            return Ok(CertNode {
                pair: pair.clone(),
                verdict: Verdict::NotDefective,
                rule: Some(rule),
                hypotheses,
                seeds: vec![],
                prime: None,
                children: vec![child],
            });
        }
        let sections = pair.h0()?;
        if sections <= self.budget as u128 {
            return self.numeric(pair);
        }
        Ok(inconclusive(
            pair,
            [
                ("sections", json!(narrow(sections)?)),
                ("budget", json!(self.budget)),
            ],
        ))
    }

    /// Maximal rank at both critical numbers of double points.
    fn numeric(&mut self, pair: &SegreVeronesePair) -> Result<CertNode> {
        let critical = pair.critical_z()?;
        let (mut zs, mut ranks, mut primes, mut seeds) = (vec![], vec![], vec![], vec![]);
        for z in critical.values() {
            let scheme = SchemeSpec::double_points(pair, z);
            let report = cohomology_cached(&scheme, &self.policy, self.cache)?;
            if !report.certified_maximal {
                return Ok(inconclusive(
                    pair,
                    [
                        ("z", json!(z)),
                        ("rank", json!(report.rank)),
                        ("expected_rank", json!(report.expected_rank())),
                        ("trials", json!(report.trials_used)),
                    ],
                ));
            }
            let best = report.best_trial().expect("certified report has a trial");
            zs.push(z);
            ranks.push(report.rank as u64);
            primes.push(best.prime);
            seeds.push(best.seed);
        }
        Ok(CertNode {
            pair: pair.clone(),
            verdict: Verdict::NotDefective,
            rule: Some(Rule::NumericCheck),
            hypotheses: [
                ("sections".to_string(), json!(narrow(pair.h0()?)?)),
                ("dim".to_string(), json!(pair.dim())),
                ("z".to_string(), json!(zs)),
                ("ranks".to_string(), json!(ranks)),
                ("primes".to_string(), json!(primes)),
            ]
            .into(),
            prime: primes.first().copied(),
            seeds,
            children: vec![],
        })
    }
}

/// Derive with the standard knowledge base and default policy.
pub fn derive(pair: &SegreVeronesePair, budget: usize) -> Result<Certificate> {
    Engine::new(KnowledgeBase::standard(), RankPolicy::default(), budget).derive(pair)
}

fn narrow(v: u128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Overflow("certificate value"))
}

fn inconclusive<const K: usize>(pair: &SegreVeronesePair, hyps: [(&str, Value); K]) -> CertNode {
    CertNode {
        pair: pair.clone(),
        verdict: Verdict::Inconclusive,
        rule: None,
        hypotheses: hyps.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        seeds: vec![],
        prime: None,
        children: vec![],
    }
}

/// Factors that may be peeled, as `(index, n, t)`: P2 before P1, higher
/// degree first, one per distinct `(n, t)`.
fn peel_candidates(pair: &SegreVeronesePair) -> Vec<(usize, u32, u32)> {
    if pair.num_factors() < 2 {
        return vec![];
    }
    let mut out: Vec<(usize, u32, u32)> = pair
        .factors()
        .enumerate()
        .filter(|&(_, (n, t))| (n == 1 || n == 2) && t >= 2)
        .map(|(i, (n, t))| (i, n, t))
        .collect();
    out.sort_by(|a, b| (b.1, b.2).cmp(&(a.1, a.2)).then(a.0.cmp(&b.0)));
    out.dedup_by_key(|c| (c.1, c.2));
    out
}

fn base_in_table(node: &CertNode) -> bool {
    node.pair
        .h0()
        .is_ok_and(|a| in_a4_table(node.pair.dim(), a))
}

fn chain_length(node: &CertNode) -> usize {
    let mut k = 0;
    let mut cur = node;
    while matches!(cur.rule, Some(Rule::A5 | Rule::A41)) && base_in_table(&cur.children[0]) {
        k += 1;
        cur = &cur.children[0];
    }
    k
}

/// Fold runs of two or more peels above a base in the threshold table into
/// a single RULE_P1ORP2 node.
pub fn compact(node: CertNode) -> CertNode {
    let k = chain_length(&node);
    if k < 2 {
        let CertNode { children, .. } = &node;
        let children = children.clone().into_iter().map(compact).collect();
        return CertNode { children, ..node };
    }
    let mut peeled = Vec::with_capacity(k);
    let mut cur = node.clone();
    for _ in 0..k {
        let n = cur.hypothesis("n").cloned().unwrap_or(Value::Null);
        let t = cur.hypothesis("t").cloned().unwrap_or(Value::Null);
        peeled.push((n, t));
        cur = cur.children.swap_remove(0);
    }
    let base = cur;
    let mut r = base.pair.dim();
    let mut alpha = base.pair.h0().expect("checked in chain_length");
    let mut hypotheses = Hypotheses::new();
    hypotheses.insert("r".into(), json!(r));
    hypotheses.insert("alpha".into(), json!(alpha as u64));
    hypotheses.insert("base_in_table".into(), json!(true));
    let mut pair = base.pair.clone();
    let mut steps = Vec::with_capacity(k);
    for (n, t) in peeled.into_iter().rev() {
        let (nn, tt) = (n.as_u64().unwrap_or(0), t.as_u64().unwrap_or(0));
        r += nn;
        alpha *= crate::space::binomial(tt + nn, nn).unwrap_or(0);
        pair = pair
            .with_factor(nn as u32, tt as u32)
            .expect("valid factor");
        steps.push(json!({
            "n": nn,
            "t": tt,
            "r": r,
            "alpha": alpha as u64,
            "in_table": in_a4_table(r, alpha),
        }));
    }
    debug_assert_eq!(pair.normalized(), node.pair.normalized());
    hypotheses.insert("steps".into(), Value::Array(steps));
    CertNode {
        pair: node.pair,
        verdict: Verdict::NotDefective,
        rule: Some(Rule::P1OrP2),
        hypotheses,
        seeds: vec![],
        prime: None,
        children: vec![compact(base)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::certificate::validate_certificate;

    fn pair(n: &[u32], d: &[u32]) -> SegreVeronesePair {
        SegreVeronesePair::new(n.to_vec(), d.to_vec()).unwrap()
    }

    #[test]
    fn four_planes_in_degree_two() {
        let cert = derive(&pair(&[2, 2, 2, 2], &[2, 2, 2, 2]), DEFAULT_BUDGET).unwrap();
        let root = &cert.root;
        assert_eq!(root.verdict, Verdict::NotDefective);
        assert_eq!(root.rule, Some(Rule::A5));
        assert_eq!(root.hypotheses["r"], json!(6));
        assert_eq!(root.hypotheses["alpha"], json!(216));
        let base = &root.children[0];
        assert_eq!(base.pair, pair(&[2, 2, 2], &[2, 2, 2]));
        assert_eq!(base.rule, Some(Rule::NumericCheck));
        assert_eq!(base.hypotheses["z"], json!([30, 31]));
        assert!(validate_certificate(&cert).unwrap());

        let mut tampered = cert.clone();
        tampered.root.hypotheses.insert("alpha".into(), json!(175));
        assert!(!validate_certificate(&tampered).unwrap());
    }

    #[test]
    fn p1_p3_p2_uses_the_p1_rule() {
        let cert = derive(&pair(&[1, 3, 2], &[3, 3, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.root.rule, Some(Rule::A41));
        assert_eq!(cert.root.hypotheses["r"], json!(5));
        assert_eq!(cert.root.hypotheses["alpha"], json!(120));
        let leaf = &cert.root.children[0];
        assert_eq!(leaf.pair, pair(&[3, 2], &[3, 2]));
        assert_eq!(leaf.rule, Some(Rule::NumericCheck));
        assert!(validate_certificate(&cert).unwrap());
    }

    #[test]
    fn known_defective_pairs_come_from_the_database() {
        let cert = derive(&pair(&[2, 2], &[2, 2]), DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.root.verdict, Verdict::Defective);
        assert_eq!(cert.root.rule, Some(Rule::DbLookup));
        assert_eq!(cert.root.hypotheses["source"], json!("CGG"));
        assert!(validate_certificate(&cert).unwrap());
    }

    #[test]
    fn rule_examples() {
        let mut e = Engine::default();
        let c = e.rule_a41_applicable(&pair(&[2, 2], &[2, 3])).unwrap();
        assert!(c.applicable, "{c:?}");
        assert_eq!(c.hypotheses["alpha"], json!(60));
        assert!(!e.rule_a41_applicable(&pair(&[2], &[2])).unwrap().applicable);
        let p1 = e.rule_a41_applicable(&pair(&[1], &[5])).unwrap();
        assert!(!p1.applicable);
        assert_eq!(p1.hypotheses["r_gt_1"], json!(false));
        assert!(
            e.rule_a5_applicable(&pair(&[2, 2, 2], &[2, 2, 2]))
                .unwrap()
                .applicable
        );
        let c = e.rule_a5_applicable(&pair(&[2, 2], &[3, 3])).unwrap();
        assert!(c.applicable);
        assert_eq!(c.hypotheses["alpha"], json!(100));
        assert!(!e.rule_a5_applicable(&pair(&[2], &[3])).unwrap().applicable);
    }

    #[test]
    fn over_budget_is_inconclusive() {
        let cert = derive(&pair(&[2, 2, 2], &[2, 2, 2]), 100).unwrap();
        assert_eq!(cert.verdict(), Verdict::Inconclusive);
        assert_eq!(cert.root.rule, None);
        assert!(!validate_certificate(&cert).unwrap());
    }

    #[test]
    fn long_chains_are_compacted() {
        // P2 x P2 with O(3, 3) is in the table; two P1 factors on top
        let cert = derive(&pair(&[1, 2, 1, 2], &[2, 3, 2, 3]), DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.root.rule, Some(Rule::P1OrP2));
        assert_eq!(cert.root.hypotheses["steps"].as_array().unwrap().len(), 2);
        assert_eq!(cert.root.children[0].pair, pair(&[2, 2], &[3, 3]));
        assert_eq!(cert.root.children[0].rule, Some(Rule::DbLookup));
        assert!(validate_certificate(&cert).unwrap());
        let json = cert.to_json();
        assert_eq!(Certificate::from_json(&json).unwrap(), cert);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(100))]
        #[test]
        fn peeling_stays_in_the_table(
            r in 2u64..40,
            extra in 0u128..5000,
            steps in proptest::collection::vec((1u64..=2, 2u64..=8), 1..6),
        ) {
            let mut alpha = crate::claims::Threshold::A4.min_alpha(r).unwrap() + extra;
            let mut r = r;
            proptest::prop_assert!(alpha > u128::from(r + 1).pow(2));
            for (n, t) in steps {
                r += n;
                alpha *= crate::space::binomial(t + n, n).unwrap();
                proptest::prop_assert!(in_a4_table(r, alpha), "r={} alpha={}", r, alpha);
                proptest::prop_assert!(alpha > u128::from(r + 1).pow(2));
            }
        }
    }

    #[test]
    fn peel_order() {
        let p = pair(&[1, 2, 2, 3, 1], &[5, 2, 4, 3, 5]);
        assert_eq!(peel_candidates(&p), vec![(2, 2, 4), (1, 2, 2), (0, 1, 5)]);
    }
}
