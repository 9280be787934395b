//! The `svsec` command line.
//!
//! Exit statuses: 0 when a result was computed (including probable
//! defectivity and a failed claim), 1 when the outcome is inconclusive or a
//! certificate does not validate, 2 on usage or input errors, 3 on I/O
//! failures.

mod cache;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::claims::{
    check_claim11, check_claim2, check_claim3, check_claim7, claim1_construct, families,
    verify_threshold_gap,
};
use crate::engine::{
    validate_certificate, Certificate, Engine, KnowledgeBase, Verdict, DEFAULT_BUDGET,
};
use crate::error::Error;
use crate::scheme::SchemeSpec;
use crate::space::SegreVeronesePair;
use crate::terracini::{
    cohomology_cached, defect_scan, verify_lemma_instance, LemmaId, LemmaParams, RankCache,
    RankPolicy, VerdictStatus,
};

pub use cache::{CacheEntry, JsonlCache};
pub use report::{
    ClaimsReport, DatabaseVerdict, DefectReport, ThresholdRow, ThresholdsReport, ValidationReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "svsec",
    version,
    about = "Secant defectivity of Segre-Veronese varieties"
)]
pub struct Cli {
    /// Emit one JSON document instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// JSON Lines rank cache shared across runs.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct PairArgs {
    /// Factor dimensions, e.g. `2,2,1`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub factors: Vec<u32>,
    /// Multidegree, e.g. `2,2,3`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub degrees: Vec<u32>,
}

impl PairArgs {
    fn pair(&self) -> crate::Result<SegreVeronesePair> {
        SegreVeronesePair::new(self.factors.clone(), self.degrees.clone())
    }
}

#[derive(Debug, Args, Clone, Default)]
pub struct RankArgs {
    /// Work over this prime only.
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Seeds per prime.
    #[arg(long)]
    pub trials: Option<usize>,
}

impl RankArgs {
    fn policy(&self) -> RankPolicy {
        let mut p = RankPolicy::default();
        if let Some(prime) = self.prime {
            p.primes = vec![prime];
        }
        if let Some(seed) = self.seed {
            p.seed = seed;
        }
        if let Some(trials) = self.trials {
            p.trials = trials;
        }
        p
    }
}

#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false, id = "points")]
pub struct PointsArgs {
    /// Number of general double points.
    #[arg(short = 'z', long = "z")]
    pub z: Option<u64>,
    /// Scheme descriptor, e.g. `3*2pt + 2*2pt@H3`.
    #[arg(long)]
    pub scheme: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// h^0 and h^1 of the ideal sheaf of a scheme twisted by the bundle.
    H0 {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        points: PointsArgs,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Rank of the Terracini matrix, with every trial.
    Rank {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        points: PointsArgs,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Scan the number of double points for defectivity.
    Defect {
        #[command(flatten)]
        pair: PairArgs,
        /// Only this number of points.
        #[arg(short = 'z', long = "z")]
        z: Option<u64>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Check one of the arithmetic claims.
    Claims {
        /// claim1, claim2, claim3, claim11, claim7, gap or inequalities.
        #[arg(long)]
        check: String,
        #[arg(long)]
        r: Option<i64>,
        #[arg(long)]
        alpha: Option<i64>,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(short = 'z', long = "z")]
        z: Option<i64>,
        #[arg(long)]
        x1: Option<i64>,
        #[arg(long)]
        y1: Option<i64>,
    },
    /// The α thresholds by dimension.
    Thresholds {
        /// Also report the threshold for this dimension.
        #[arg(long)]
        r: Option<u64>,
    },
    /// Verify one instance of a lemma on a base pair.
    Lemma {
        /// a1a, a1c, a3a, a3b, a5_0 or a1_2.
        #[arg(long)]
        lemma: String,
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short = 'z', long = "z")]
        z: Option<u64>,
        #[arg(long)]
        u: Option<u64>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Derive non-defectivity and emit a certificate.
    Derive {
        #[command(flatten)]
        pair: PairArgs,
        /// Largest number of sections checked numerically.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_name = "PATH")]
        emit_cert: Option<PathBuf>,
        #[command(flatten)]
        rank: RankArgs,
    },
    /// Replay a certificate.
    Validate {
        #[arg(long, value_name = "PATH")]
        cert: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    text: String,
    json: serde_json::Value,
    exit: i32,
}

impl Output {
    fn new(text: String, json: impl serde::Serialize, exit: i32) -> Self {
        Self {
            text,
            json: serde_json::to_value(json).expect("report serializes"),
            exit,
        }
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cache = match &cli.cache {
        Some(path) => match JsonlCache::open(path) {
            Ok(c) => Some(c),
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_IO;
            }
        },
        None => None,
    };
    let cache_ref = cache.as_ref().map(|c| c as &dyn RankCache);
    match dispatch(&cli.command, cache_ref) {
        Ok(o) => {
            let written = if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.json).expect("json")
                )
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return EXIT_IO;
            }
            o.exit
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_IO
        }
    }
}

fn scheme_of(pair: &SegreVeronesePair, points: &PointsArgs) -> crate::Result<SchemeSpec> {
    match (&points.scheme, points.z) {
        (Some(text), _) => SchemeSpec::parse(pair, text),
        (None, Some(z)) => Ok(SchemeSpec::double_points(pair, z)),
        (None, None) => Err(Error::MissingParam("z or scheme")),
    }
}

fn need<T: Copy>(v: Option<T>, name: &'static str) -> Result<T, Failure> {
    v.ok_or(Failure::Usage(format!(
        "--{name} is required for this check"
    )))
}

fn dispatch(cmd: &Command, cache: Option<&dyn RankCache>) -> Result<Output, Failure> {
    match cmd {
        Command::H0 { pair, points, rank } | Command::Rank { pair, points, rank } => {
            let scheme = scheme_of(&pair.pair()?, points)?;
            let report = cohomology_cached(&scheme, &rank.policy(), cache)?;
            let text = if matches!(cmd, Command::H0 { .. }) {
                report::h0_text(&report)
            } else {
                report::rank_text(&report)
            };
            Ok(Output::new(text, report, EXIT_OK))
        }
        Command::Defect { pair, z, rank } => {
            let pair = pair.pair()?;
            let policy = rank.policy();
            let verdicts = defect_scan(&pair, z.map(|z| z..=z), &policy, cache)?;
            let database = KnowledgeBase::standard().lookup(&pair);
            let rep = DefectReport::new(&pair, verdicts, database)?;
            let exit = if rep.summary == VerdictStatus::Inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok(Output::new(rep.text(), rep, exit))
        }
        Command::Claims {
            check,
            r,
            alpha,
            t,
            a,
            z,
            x1,
            y1,
        } => claims(check, *r, *alpha, *t, *a, *z, *x1, *y1),
        Command::Thresholds { r } => {
            let rep = ThresholdsReport::new(*r);
            Ok(Output::new(rep.text(), rep, EXIT_OK))
        }
        Command::Lemma {
            lemma,
            pair,
            z,
            u,
            rank,
        } => {
            let id: LemmaId = lemma.parse()?;
            let mut params = LemmaParams::new();
            if let Some(z) = z {
                params.insert("z".into(), *z);
            }
            if let Some(u) = u {
                params.insert("u".into(), *u);
            }
            let rep = verify_lemma_instance(id, &pair.pair()?, &params, &rank.policy())?;
            Ok(Output::new(report::lemma_text(&rep), rep, EXIT_OK))
        }
        Command::Derive {
            pair,
            budget,
            emit_cert,
            rank,
        } => {
            let mut engine = Engine::new(KnowledgeBase::standard(), rank.policy(), *budget);
            if let Some(c) = cache {
                engine = engine.with_cache(c);
            }
            let cert = engine.derive(&pair.pair()?)?;
            if let Some(path) = emit_cert {
                write_file(path, &cert.to_json())?;
            }
            let exit = if cert.verdict() == Verdict::Inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            Ok(Output::new(report::certificate_text(&cert), &cert, exit))
        }
        Command::Validate { cert } => {
            let text = std::fs::read_to_string(cert).map_err(|e| Failure::Io(cert.clone(), e))?;
            let parsed = Certificate::from_json(&text)?;
            let valid = validate_certificate(&parsed)?;
            let rep = ValidationReport::new(&parsed, valid);
            let exit = if valid { EXIT_OK } else { EXIT_INCONCLUSIVE };
            Ok(Output::new(rep.text(), rep, exit))
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

#[allow(clippy::too_many_arguments)]
fn claims(
    check: &str,
    r: Option<i64>,
    alpha: Option<i64>,
    t: Option<i64>,
    a: Option<i64>,
    z: Option<i64>,
    x1: Option<i64>,
    y1: Option<i64>,
) -> Result<Output, Failure> {
    let mut inputs = std::collections::BTreeMap::new();
    let mut record = |k: &str, v: i64| {
        inputs.insert(k.to_string(), v);
        v
    };
    let result = match check {
        "claim1" => {
            let (r, al, z) = (need(r, "r")?, need(alpha, "alpha")?, need(z, "z")?);
            claim1_construct(record("r", r), record("alpha", al), record("z", z))
        }
        "claim2" => {
            let (r, al, z) = (need(r, "r")?, need(alpha, "alpha")?, need(z, "z")?);
            let (x, y) = (need(x1, "x1")?, need(y1, "y1")?);
            check_claim2(
                record("r", r),
                record("alpha", al),
                record("z", z),
                record("x1", x),
                record("y1", y),
            )
        }
        "claim3" => {
            let (r, al) = (need(r, "r")?, need(alpha, "alpha")?);
            check_claim3(record("r", r), record("alpha", al))
        }
        "claim11" => {
            let (r, al, t) = (need(r, "r")?, need(alpha, "alpha")?, need(t, "t")?);
            check_claim11(record("r", r), record("alpha", al), record("t", t))
        }
        "claim7" => check_claim7(record("a", need(a, "a")?)),
        "gap" => {
            let r = need(r, "r")?;
            let r = u32::try_from(r).map_err(|_| Failure::Usage(format!("r = {r} out of range")))?;
            let rep = verify_threshold_gap(r)?;
            return Ok(Output::new(report::gap_text(&rep), rep, EXIT_OK));
        }
        "inequalities" => {
            let reps: Vec<_> = families().iter().map(|f| f.verify()).collect();
            return Ok(Output::new(report::inequalities_text(&reps), reps, EXIT_OK));
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown check `{other}` (expected claim1, claim2, claim3, claim11, claim7, gap or inequalities)"
            )))
        }
    };
    let rep = ClaimsReport {
        check: check.to_string(),
        inputs,
        holds: result.holds,
        witness: result.witness,
    };
    Ok(Output::new(rep.text(), rep, EXIT_OK))
}
