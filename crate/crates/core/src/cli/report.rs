use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::claims::{GapReport, InequalityReport, Threshold, TABLE_START_LARGE_R};
use crate::engine::{CertNode, Certificate, FactVerdict, Source, Verdict};
use crate::space::{CriticalRanks, SegreVeronesePair};
use crate::terracini::{
    CohomologyReport, DefectivityVerdict, Evidence, LemmaReport, VerdictStatus,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatabaseVerdict {
    pub verdict: FactVerdict,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub pair: SegreVeronesePair,
    pub sections: u64,
    pub dim: u64,
    pub critical: CriticalRanks,
    pub verdicts: Vec<DefectivityVerdict>,
    pub summary: VerdictStatus,
    pub database: Option<DatabaseVerdict>,
}

impl DefectReport {
    pub fn new(
        pair: &SegreVeronesePair,
        verdicts: Vec<DefectivityVerdict>,
        database: Option<(FactVerdict, Source)>,
    ) -> crate::Result<Self> {
        Ok(Self {
            pair: pair.clone(),
            sections: pair.h0()? as u64,
            dim: pair.dim(),
            critical: pair.critical_z()?,
            summary: crate::terracini::summarize(&verdicts),
            verdicts,
            database: database.map(|(verdict, source)| DatabaseVerdict { verdict, source }),
        })
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pair      {}", self.pair);
        let _ = writeln!(
            s,
            "sections  {}  dim {}  critical z {}..{}",
            self.sections, self.dim, self.critical.z_lo, self.critical.z_hi
        );
        let db = match &self.database {
            Some(d) => format!("{} ({})", fact_name(d.verdict), d.source.tag()),
            None => "not covered".to_string(),
        };
        let _ = writeln!(s, "database  {db}");
        let _ = writeln!(s, "{:>6}  {:<28}  evidence", "z", "status");
        for v in &self.verdicts {
            let evidence = match v.evidence {
                Evidence::Computed {
                    rank,
                    expected_rank,
                } => format!("rank {rank} of {expected_rank}"),
                Evidence::Implied { from } => format!("implied by z = {from}"),
            };
            let _ = writeln!(s, "{:>6}  {:<28}  {evidence}", v.z, status_name(&v.status));
        }
        let _ = writeln!(s, "summary   {}", status_name(&self.summary));
        s
    }
}

fn fact_name(v: FactVerdict) -> &'static str {
    match v {
        FactVerdict::Defective => "DEFECTIVE",
        FactVerdict::NotDefective => "NOT_DEFECTIVE",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Defective => "DEFECTIVE",
        Verdict::NotDefective => "NOT_DEFECTIVE",
        Verdict::Inconclusive => "INCONCLUSIVE",
    }
}

fn status_name(s: &VerdictStatus) -> String {
    match s {
        VerdictStatus::NotDefectiveCertified => "NOT_DEFECTIVE_CERTIFIED".into(),
        VerdictStatus::ProbablyDefective { defect } => {
            format!("PROBABLY_DEFECTIVE(defect {defect})")
        }
        VerdictStatus::Inconclusive => "INCONCLUSIVE".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsReport {
    pub check: String,
    pub inputs: BTreeMap<String, i64>,
    pub holds: bool,
    pub witness: Option<BTreeMap<String, i64>>,
}

impl ClaimsReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(
            s,
            "{} ({})  {}",
            self.check,
            inputs.join(", "),
            holds(self.holds)
        );
        if let Some(w) = &self.witness {
            for (k, v) in w {
                let _ = writeln!(s, "  {k:<12} {v}");
            }
        }
        s
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub r: u64,
    pub alpha_min: u64,
    /// The larger bound some inequality families need.
    pub alpha_min_older: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdsReport {
    pub rows: Vec<ThresholdRow>,
    /// Rule for dimensions beyond the table.
    pub large_r: String,
    pub query: Option<ThresholdRow>,
}

impl ThresholdsReport {
    pub fn new(r: Option<u64>) -> Self {
        let row = |r: u64| {
            Threshold::A4.min_alpha(r).map(|m| ThresholdRow {
                r,
                alpha_min: m as u64,
                alpha_min_older: u32::try_from(r)
                    .ok()
                    .and_then(|r| Threshold::A4Old.small(r)),
            })
        };
        Self {
            rows: (2..u64::from(TABLE_START_LARGE_R))
                .filter_map(row)
                .collect(),
            large_r: format!("r >= {TABLE_START_LARGE_R}: 81 alpha >= 27r^3 + 144r^2 + 210r + 79"),
            query: r.and_then(row),
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:>4}  {:>9}  {:>9}", "r", "alpha >=", "older");
        for row in &self.rows {
            let older = row
                .alpha_min_older
                .map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(s, "{:>4}  {:>9}  {:>9}", row.r, row.alpha_min, older);
        }
        let _ = writeln!(s, "{}", self.large_r);
        if let Some(q) = &self.query {
            let _ = writeln!(s, "r = {}: alpha >= {}", q.r, q.alpha_min);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub pair: SegreVeronesePair,
    pub verdict: Verdict,
    pub nodes: usize,
    pub numeric_leaves: usize,
}

impl ValidationReport {
    pub fn new(cert: &Certificate, valid: bool) -> Self {
        let nodes = cert.root.walk();
        Self {
            valid,
            pair: cert.root.pair.clone(),
            verdict: cert.verdict(),
            nodes: nodes.len(),
            numeric_leaves: nodes
                .iter()
                .filter(|n| n.rule == Some(crate::engine::Rule::NumericCheck))
                .count(),
        }
    }

    pub fn text(&self) -> String {
        format!(
            "{}: {} certificate for {} ({} nodes, {} numeric leaves replayed)\n",
            if self.valid { "valid" } else { "INVALID" },
            verdict_name(self.verdict),
            self.pair,
            self.nodes,
            self.numeric_leaves
        )
    }
}

pub fn h0_text(r: &CohomologyReport) -> String {
    format!(
        "pair      {}\nscheme    {}\nsections  {}  degree {}\nh0        {}\nh1        {}\nexact     {}\n",
        r.pair,
        r.scheme,
        r.sections,
        r.total_degree,
        r.h0,
        r.h1,
        if r.certified_maximal { "yes (maximal rank)" } else { "upper bounds" }
    )
}

pub fn rank_text(r: &CohomologyReport) -> String {
    let mut s = format!(
        "pair      {}\nscheme    {}\nmatrix    {} x {}\nrank      {}{}\n",
        r.pair,
        r.scheme,
        r.total_degree,
        r.sections,
        r.rank,
        if r.certified_maximal {
            " (maximal)"
        } else {
            ""
        }
    );
    for t in &r.trials {
        let _ = writeln!(
            s,
            "  prime {:>10}  seed {:#018x}  rank {}",
            t.prime, t.seed, t.rank
        );
    }
    s
}

pub fn lemma_text(r: &LemmaReport) -> String {
    let mut s = format!(
        "{} on base {} (r = {}, alpha = {})\n",
        r.lemma, r.base, r.r, r.alpha
    );
    for h in &r.hypotheses {
        let _ = writeln!(
            s,
            "  [{}] {}: {}",
            if h.holds { "x" } else { " " },
            h.name,
            h.evaluated
        );
    }
    let _ = writeln!(
        s,
        "conclusion {}: {}  (rank {} of {} x {})",
        r.conclusion,
        holds(r.conclusion_holds),
        r.cohomology.rank,
        r.cohomology.total_degree,
        r.cohomology.sections
    );
    s
}

pub fn gap_text(r: &GapReport) -> String {
    let failing: Vec<u64> = r
        .checks
        .iter()
        .filter(|c| !(c.claim1 && c.claim2 && c.claim3))
        .map(|c| c.alpha)
        .collect();
    format!(
        "r = {}: alpha in [{}, {}) checked directly, {} values, {}{}\n",
        r.r,
        r.from,
        r.to,
        r.checks.len(),
        holds(r.holds),
        if failing.is_empty() {
            String::new()
        } else {
            format!(" at {failing:?}")
        }
    )
}

pub fn inequalities_text(reps: &[InequalityReport]) -> String {
    let mut s = String::new();
    for r in reps {
        let small: Vec<String> = r
            .small_r
            .iter()
            .filter(|c| !c.holds)
            .map(|c| format!("r={}", c.r))
            .collect();
        let _ = writeln!(
            s,
            "{:<16} {:<6} {}  tail {}{}",
            r.name,
            format!("{:?}", r.table),
            holds(r.holds),
            holds(r.tail_holds),
            if small.is_empty() {
                String::new()
            } else {
                format!("  fails at {}", small.join(" "))
            }
        );
    }
    s
}

pub fn certificate_text(cert: &Certificate) -> String {
    let mut s = format!("{} {}\n", cert.version, verdict_name(cert.verdict()));
    node_text(&cert.root, 0, &mut s);
    s
}

fn node_text(node: &CertNode, depth: usize, s: &mut String) {
    let rule = node
        .rule
        .and_then(|r| serde_json::to_value(r).ok())
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_else(|| "none".into());
    let hyps: Vec<String> = node
        .hypotheses
        .iter()
        .filter(|(k, _)| k.as_str() != "steps")
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let _ = writeln!(
        s,
        "{:indent$}{}  {}  {}  {}",
        "",
        node.pair,
        verdict_name(node.verdict),
        rule,
        hyps.join(" "),
        indent = 2 * depth
    );
    for c in &node.children {
        node_text(c, depth + 1, s);
    }
}
