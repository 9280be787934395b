// A persistent rank cache: the second scan reuses certified ranks.

use segre_secant::cli::JsonlCache;
use segre_secant::space::SegreVeronesePair;
use segre_secant::terracini::{defect_scan, RankPolicy};

pub fn run_example() -> segre_secant::Result<()> {
    let dir = tempfile::tempdir().expect("temporary directory");
    let path = dir.path().join("ranks.jsonl");
    let pair: SegreVeronesePair = "P2xP2 deg (2,3)".parse()?;
    let policy = RankPolicy::default();
    for run in 1..=2 {
        let cache = JsonlCache::open(&path).expect("cache opens");
        let before = cache.len();
        defect_scan(&pair, None, &policy, Some(&cache))?;
        println!("run {run}: {before} entries before, {} after", cache.len());
    }
    Ok(())
}

fn main() {
    run_example().expect("rank cache example");
}
