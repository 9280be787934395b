//! Non-defectivity by induction over a database of known classifications,
//! with numeric Terracini checks as base cases.

mod certificate;
mod db;
mod derive;

pub use certificate::{
    rule_arithmetic, validate_certificate, validate_certificate_with, CertNode, Certificate,
    Hypotheses, Rule, Verdict, CERT_VERSION,
};
pub use db::{FactVerdict, KnowledgeBase, KnownFact, Source};
pub use derive::{compact, derive, Engine, RuleCheck, DEFAULT_BUDGET};
