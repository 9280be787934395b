use std::process::Command;

use proptest::prelude::*;
use serde::de::DeserializeOwned;
use serde_json::Value;

use segre_secant::claims::{GapReport, InequalityReport};
use segre_secant::cli::{
    run, CacheEntry, ClaimsReport, DefectReport, ThresholdsReport, ValidationReport, EXIT_INCONCLUSIVE,
    EXIT_IO, EXIT_OK, EXIT_USAGE,
};
use segre_secant::engine::{Certificate, Verdict};
use segre_secant::terracini::{CohomologyReport, LemmaReport, VerdictStatus};

fn svsec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["svsec"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Parse the JSON output as `T` and check that it serializes back to the
/// same document.
fn round_trip<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> (i32, T) {
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let (code, out, err) = svsec(&with_json);
    let doc: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    let typed: T = serde_json::from_value(doc.clone()).unwrap();
    assert_eq!(serde_json::to_value(&typed).unwrap(), doc);
    (code, typed)
}

#[test]
fn h0_and_rank_json() {
    let (code, rep): (_, CohomologyReport) =
        round_trip(&["h0", "--factors", "2", "--degrees", "4", "-z", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!((rep.sections, rep.total_degree, rep.h0, rep.h1), (15, 15, 1, 1));
    let (code, rep): (_, CohomologyReport) = round_trip(&[
        "rank", "--factors", "2", "--degrees", "3", "--scheme", "3*2pt + 1*2pt@H1", "--prime", "2147483629",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(rep.total_degree, 3 * 3 + 2);
    assert!(rep.trials.iter().all(|t| t.prime == 2147483629));
}

#[test]
fn defect_json() {
    let (code, rep): (_, DefectReport) = round_trip(&["defect", "--factors", "2,2", "--degrees", "2,2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(rep.summary, VerdictStatus::ProbablyDefective { defect: 2 });
    assert_eq!((rep.sections, rep.dim), (36, 4));
    assert!(rep.database.is_some());
    let (code, rep): (_, DefectReport) =
        round_trip(&["defect", "--factors", "2", "--degrees", "3", "-z", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(rep.verdicts.len(), 1);
}

#[test]
fn claims_json() {
    let (code, rep): (_, ClaimsReport) =
        round_trip(&["claims", "--check", "claim1", "--r", "2", "--alpha", "60", "-z", "72"]);
    assert_eq!(code, EXIT_OK);
    assert!(rep.holds);
    let w = rep.witness.unwrap();
    assert_eq!((w["x1"], w["y1"]), (43, 8));
    let (_, rep): (_, ClaimsReport) = round_trip(&[
        "claims", "--check", "claim2", "--r", "2", "--alpha", "60", "-z", "72", "--x1", "43", "--y1", "8",
    ]);
    assert!(rep.holds);
    let (_, rep): (_, ClaimsReport) = round_trip(&["claims", "--check", "claim7", "--a", "5"]);
    assert!(rep.holds);
    let (_, gap): (_, GapReport) = round_trip(&["claims", "--check", "gap", "--r", "3"]);
    assert!(gap.holds);
    assert_eq!((gap.from, gap.to), (60, 75));
    let (_, reps): (_, Vec<InequalityReport>) = round_trip(&["claims", "--check", "inequalities"]);
    assert!(reps.iter().all(|r| r.holds));
}

#[test]
fn thresholds_json() {
    let (code, rep): (_, ThresholdsReport) = round_trip(&["thresholds", "--r", "10"]);
    assert_eq!(code, EXIT_OK);
    let mins: Vec<u64> = rep.rows.iter().map(|r| r.alpha_min).collect();
    assert_eq!(mins, [60, 60, 98, 133, 176, 231]);
    // 81 alpha >= 27000 + 14400 + 2100 + 79 = 43579
    assert_eq!(rep.query.unwrap().alpha_min, 539);
}

#[test]
fn lemma_json() {
    let (code, rep): (_, LemmaReport) =
        round_trip(&["lemma", "--lemma", "a1a", "--factors", "2", "--degrees", "3", "-z", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(rep.hypotheses_hold && rep.conclusion_holds);
}

#[test]
fn derive_emit_and_validate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let (code, cert): (_, Certificate) = round_trip(&[
        "derive", "--factors", "2,2,2,2", "--degrees", "2,2,2,2", "--emit-cert", p,
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(cert.verdict(), Verdict::NotDefective);
    assert_eq!(Certificate::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap(), cert);

    let (code, rep): (_, ValidationReport) = round_trip(&["validate", "--cert", p]);
    assert_eq!(code, EXIT_OK);
    assert!(rep.valid && rep.numeric_leaves >= 1);

    // Lowering alpha below the table breaks the recorded arithmetic.
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["hypotheses"]["alpha"] = Value::from(175);
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, rep): (_, ValidationReport) = round_trip(&["validate", "--cert", p]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(!rep.valid);

    std::fs::write(&path, "{\"version\": \"cert-v1\"}").unwrap();
    assert_eq!(svsec(&["validate", "--cert", p]).0, EXIT_USAGE);
}

#[test]
fn derive_over_budget_is_inconclusive() {
    let (code, cert): (_, Certificate) =
        round_trip(&["derive", "--factors", "3,3", "--degrees", "3,3", "--budget", "100"]);
    // Covered by the database, so the budget does not matter here.
    assert_eq!((code, cert.verdict()), (EXIT_OK, Verdict::NotDefective));
    let (code, cert): (_, Certificate) =
        round_trip(&["derive", "--factors", "2,2,2", "--degrees", "2,2,2", "--budget", "100"]);
    assert_eq!((code, cert.verdict()), (EXIT_INCONCLUSIVE, Verdict::Inconclusive));
}

#[test]
fn cache_file_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ranks.jsonl");
    let c = path.to_str().unwrap();
    let args = ["--cache", c, "h0", "--factors", "2,2", "--degrees", "2,2", "-z", "7"];
    let (code, first, _) = svsec(&args);
    assert_eq!(code, EXIT_OK);
    let lines = std::fs::read_to_string(&path).unwrap();
    let entries: Vec<CacheEntry> = lines.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e.rank == 33 && !e.certified && e.key.z == 7));
    let (code, second, _) = svsec(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(first, second);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 9] = [
        (&["thresholds"], EXIT_OK),
        (&["--help"], EXIT_OK),
        (&["frobnicate"], EXIT_USAGE),
        (&["h0", "--factors", "2"], EXIT_USAGE),
        (&["h0", "--factors", "2", "--degrees", "2,3", "-z", "1"], EXIT_USAGE),
        (&["h0", "--factors", "2", "--degrees", "2", "--scheme", "2*3pt"], EXIT_USAGE),
        (&["claims", "--check", "claim9"], EXIT_USAGE),
        (&["lemma", "--lemma", "zz", "--factors", "2", "--degrees", "3"], EXIT_USAGE),
        (&["validate", "--cert", "/nonexistent/cert.json"], EXIT_IO),
    ];
    for (args, want) in cases {
        let (code, _, err) = svsec(args);
        assert_eq!(code, want, "{args:?}: {err}");
        if want == EXIT_USAGE {
            assert!(!err.is_empty());
        }
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_svsec");
    let ok = Command::new(bin).args(["thresholds", "--json"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let _: ThresholdsReport = serde_json::from_slice(&ok.stdout).unwrap();
    let bad = Command::new(bin).args(["defect", "--factors", "0", "--degrees", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exit_status_is_one_of_four(args in proptest::collection::vec(
        prop::sample::select(vec![
            "h0", "rank", "defect", "thresholds", "claims", "--factors", "--degrees", "1", "2",
            "2,2", "-z", "3", "--check", "gap", "--r", "--json", "--budget", "x",
        ]),
        0..7,
    )) {
        let (code, _, _) = svsec(&args);
        prop_assert!([EXIT_OK, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_IO].contains(&code));
    }
}
