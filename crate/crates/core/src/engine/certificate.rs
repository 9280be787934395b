use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::claims::{in_a4_table, Threshold};
use crate::error::{Error, Result};
use crate::scheme::SchemeSpec;
use crate::space::{binomial, SegreVeronesePair};
use crate::terracini::rank_once;

use super::db::{FactVerdict, KnowledgeBase};

pub const CERT_VERSION: &str = "cert-v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "RULE_A41")]
    A41,
    #[serde(rename = "RULE_A5")]
    A5,
    #[serde(rename = "RULE_P1ORP2")]
    P1OrP2,
    #[serde(rename = "DB_LOOKUP")]
    DbLookup,
    #[serde(rename = "NUMERIC_CHECK")]
    NumericCheck,
}

impl Rule {
    pub fn is_leaf(self) -> bool {
        matches!(self, Rule::DbLookup | Rule::NumericCheck)
    }

    /// Dimension of the factor added by a single-step rule.
    pub fn peeled_dim(self) -> Option<u32> {
        match self {
            Rule::A41 => Some(1),
            Rule::A5 => Some(2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NotDefective,
    Defective,
    Inconclusive,
}

impl From<FactVerdict> for Verdict {
    fn from(v: FactVerdict) -> Self {
        match v {
            FactVerdict::Defective => Verdict::Defective,
            FactVerdict::NotDefective => Verdict::NotDefective,
        }
    }
}

pub type Hypotheses = BTreeMap<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertNode {
    pub pair: SegreVeronesePair,
    pub verdict: Verdict,
    pub rule: Option<Rule>,
    #[serde(default)]
    pub hypotheses: Hypotheses,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub prime: Option<u64>,
    #[serde(default)]
    pub children: Vec<CertNode>,
}

impl CertNode {
    pub fn hypothesis(&self, name: &str) -> Option<&Value> {
        self.hypotheses.get(name)
    }

    /// Nodes in pre-order.
    pub fn walk(&self) -> Vec<&CertNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(CertNode::depth).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    #[serde(flatten)]
    pub root: CertNode,
}

impl Certificate {
    pub fn new(root: CertNode) -> Self {
        Self {
            version: CERT_VERSION.to_string(),
            root,
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.root.verdict
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }

    pub fn leaves(&self) -> Vec<&CertNode> {
        self.root
            .walk()
            .into_iter()
            .filter(|n| n.children.is_empty())
            .collect()
    }
}

/// Arithmetic hypotheses of a single-step rule over a base with dimension
/// `r` and `alpha` sections, and whether they all hold.
pub fn rule_arithmetic(rule: Rule, r: u64, alpha: u128) -> (Hypotheses, bool) {
    let mut h = Hypotheses::new();
    let holds = match rule {
        Rule::A5 => {
            let min = Threshold::A4.min_alpha(r);
            let ok = in_a4_table(r, alpha);
            h.insert(
                "alpha_min".into(),
                min.map_or(Value::Null, |m| json!(m as u64)),
            );
            h.insert("in_table".into(), json!(ok));
            ok
        }
        Rule::A41 => {
            let bound = u128::from(r + 1).pow(2);
            let r_ok = r > 1;
            let a_ok = alpha > bound;
            h.insert("alpha_bound".into(), json!(bound as u64));
            h.insert("r_gt_1".into(), json!(r_ok));
            h.insert("alpha_gt_bound".into(), json!(a_ok));
            r_ok && a_ok
        }
        _ => false,
    };
    (h, holds)
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

fn get_u64(node: &CertNode, key: &str) -> Result<u64> {
    node.hypothesis(key).and_then(Value::as_u64).ok_or_else(|| {
        malformed(format!(
            "{} node lacks numeric hypothesis `{key}`",
            node.pair
        ))
    })
}

fn get_u64_list(node: &CertNode, key: &str) -> Result<Vec<u64>> {
    let arr = node
        .hypothesis(key)
        .and_then(Value::as_array)
        .ok_or_else(|| malformed(format!("{} node lacks list hypothesis `{key}`", node.pair)))?;
    arr.iter()
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| malformed(format!("non-integer entry in `{key}`")))
        })
        .collect()
}

fn same_pair(a: &SegreVeronesePair, b: &SegreVeronesePair) -> bool {
    a.normalized() == b.normalized()
}

/// Re-check a certificate against the standard knowledge base.
pub fn validate_certificate(cert: &Certificate) -> Result<bool> {
    validate_certificate_with(cert, &KnowledgeBase::standard())
}

/// Re-evaluate every hypothesis from the recorded numbers and replay every
/// numeric leaf with its recorded seeds. Structural problems are errors;
/// anything that fails to reproduce yields `false`.
pub fn validate_certificate_with(cert: &Certificate, kb: &KnowledgeBase) -> Result<bool> {
    if cert.version != CERT_VERSION {
        return Err(malformed(format!("unsupported version `{}`", cert.version)));
    }
    validate_node(&cert.root, kb)
}

fn validate_node(node: &CertNode, kb: &KnowledgeBase) -> Result<bool> {
    let Some(rule) = node.rule else {
        if node.verdict == Verdict::Inconclusive {
            return Ok(false);
        }
        return Err(malformed(format!(
            "{} has a verdict but no rule",
            node.pair
        )));
    };
    if rule.is_leaf() && !node.children.is_empty() {
        return Err(malformed(format!(
            "leaf rule with children at {}",
            node.pair
        )));
    }
    if !rule.is_leaf() && node.children.len() != 1 {
        return Err(malformed(format!(
            "{} node needs exactly one child, found {}",
            node.pair,
            node.children.len()
        )));
    }
    match rule {
        Rule::DbLookup => validate_lookup(node, kb),
        Rule::NumericCheck => validate_numeric(node),
        Rule::A5 | Rule::A41 => validate_step(node, rule, kb),
        Rule::P1OrP2 => validate_chain(node, kb),
    }
}

fn validate_lookup(node: &CertNode, kb: &KnowledgeBase) -> Result<bool> {
    let source = node
        .hypothesis("source")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("database leaf without source"))?;
    Ok(kb
        .lookup(&node.pair)
        .is_some_and(|(v, s)| Verdict::from(v) == node.verdict && s.tag() == source))
}

fn validate_numeric(node: &CertNode) -> Result<bool> {
    if node.verdict != Verdict::NotDefective {
        return Ok(false);
    }
    let zs = get_u64_list(node, "z")?;
    let ranks = get_u64_list(node, "ranks")?;
    let primes = get_u64_list(node, "primes")?;
    if node.seeds.len() != zs.len() || ranks.len() != zs.len() || primes.len() != zs.len() {
        return Err(malformed(format!(
            "{}: z, ranks, primes and seeds differ in length",
            node.pair
        )));
    }
    if node.prime != primes.first().copied() {
        return Err(malformed(format!(
            "{}: prime disagrees with primes",
            node.pair
        )));
    }
    let n = node.pair.h0()?;
    let dim = node.pair.dim();
    if get_u64(node, "sections")? as u128 != n || get_u64(node, "dim")? != dim {
        return Ok(false);
    }
    if zs != node.pair.critical_z()?.values() {
        return Ok(false);
    }
    for (((&z, &rank), &prime), &seed) in zs.iter().zip(&ranks).zip(&primes).zip(&node.seeds) {
        let expected = (u128::from(z) * u128::from(dim + 1)).min(n);
        if u128::from(rank) != expected {
            return Ok(false);
        }
        let scheme = SchemeSpec::double_points(&node.pair, z);
        if rank_once(&scheme, prime, seed)? as u128 != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

fn validate_step(node: &CertNode, rule: Rule, kb: &KnowledgeBase) -> Result<bool> {
    let child = &node.children[0];
    let n = get_u64(node, "n")?;
    let t = get_u64(node, "t")?;
    let r = get_u64(node, "r")?;
    let alpha = get_u64(node, "alpha")?;
    if node.verdict != Verdict::NotDefective || child.verdict != Verdict::NotDefective {
        return Ok(false);
    }
    if Some(n as u32) != rule.peeled_dim() || t < 2 {
        return Ok(false);
    }
    if r != child.pair.dim() || u128::from(alpha) != child.pair.h0()? {
        return Ok(false);
    }
    if !same_pair(&node.pair, &child.pair.with_factor(n as u32, t as u32)?) {
        return Ok(false);
    }
    let (expected, holds) = rule_arithmetic(rule, r, u128::from(alpha));
    if !holds || expected.iter().any(|(k, v)| node.hypothesis(k) != Some(v)) {
        return Ok(false);
    }
    validate_node(child, kb)
}

fn validate_chain(node: &CertNode, kb: &KnowledgeBase) -> Result<bool> {
    let base = &node.children[0];
    let steps = node
        .hypothesis("steps")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("chain without steps"))?;
    if steps.is_empty() {
        return Err(malformed("chain with no steps"));
    }
    if node.verdict != Verdict::NotDefective || base.verdict != Verdict::NotDefective {
        return Ok(false);
    }
    let mut r = get_u64(node, "r")?;
    let mut alpha = u128::from(get_u64(node, "alpha")?);
    if r != base.pair.dim() || alpha != base.pair.h0()? || !in_a4_table(r, alpha) {
        return Ok(false);
    }
    let mut pair = base.pair.clone();
    for step in steps {
        let field = |k: &str| {
            step.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| malformed(format!("chain step lacks `{k}`")))
        };
        let (n, t) = (field("n")?, field("t")?);
        if !(1..=2).contains(&n) || t < 2 {
            return Ok(false);
        }
        let grow = binomial(t + n, n).ok_or(Error::Overflow("binomial coefficient"))?;
        r += n;
        alpha = alpha
            .checked_mul(grow)
            .ok_or(Error::Overflow("chain sections"))?;
        pair = pair.with_factor(n as u32, t as u32)?;
        if u128::from(field("r")?) != u128::from(r)
            || u128::from(field("alpha")?) != alpha
            || !in_a4_table(r, alpha)
        {
            return Ok(false);
        }
    }
    if !same_pair(&pair, &node.pair) {
        return Ok(false);
    }
    validate_node(base, kb)
}
