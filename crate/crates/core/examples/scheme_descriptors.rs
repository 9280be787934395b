// Schemes mixing full double points with double points constrained to a
// hyperplane of one factor.

use segre_secant::scheme::SchemeSpec;
use segre_secant::space::SegreVeronesePair;
use segre_secant::terracini::{cohomology, RankPolicy};

pub fn run_example() -> segre_secant::Result<()> {
    let pair: SegreVeronesePair = "P2xP2 deg (3,1)".parse()?;
    for text in ["3*2pt", "3*2pt + 2*2pt@H2", "5*2pt"] {
        let scheme = SchemeSpec::parse(&pair, text)?;
        let report = cohomology(&scheme, &RankPolicy::default())?;
        println!(
            "{:<20} degree {:>2}  h0 {:>2}  h1 {}",
            scheme.descriptor(),
            scheme.total_degree(),
            report.h0,
            report.h1
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("scheme descriptor example");
}
