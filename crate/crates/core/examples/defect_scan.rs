// Scan every number of double points for a defective product.

use segre_secant::space::SegreVeronesePair;
use segre_secant::terracini::{defect_scan, summarize, RankPolicy};

pub fn run_example() -> segre_secant::Result<()> {
    let policy = RankPolicy::default();
    for text in ["P2xP2 deg (2,2)", "P1xP1xP2 deg (2,2,2)", "P2xP2 deg (2,3)"] {
        let pair: SegreVeronesePair = text.parse()?;
        let verdicts = defect_scan(&pair, None, &policy, None)?;
        println!("{pair}: {:?}", summarize(&verdicts));
        for v in &verdicts {
            println!("  z = {:>2}  {:?}  {:?}", v.z, v.status, v.evidence);
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("defect scan example");
}
