// Rank of the Terracini matrix at general double points.
//
// The Veronese surface and plane quartics lose one condition; plane
// cubics do not.

use segre_secant::scheme::SchemeSpec;
use segre_secant::space::SegreVeronesePair;
use segre_secant::terracini::{cohomology, RankPolicy};

pub fn run_example() -> segre_secant::Result<()> {
    let policy = RankPolicy::default();
    for (d, z) in [(2, 2), (3, 3), (4, 5)] {
        let pair = SegreVeronesePair::projective(2, d)?;
        let report = cohomology(&SchemeSpec::double_points(&pair, z), &policy)?;
        println!(
            "{pair}, {z} double points: rank {} of {}x{}, h0 {}, h1 {}, maximal {}",
            report.rank,
            report.total_degree,
            report.sections,
            report.h0,
            report.h1,
            report.certified_maximal
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("terracini rank example");
}
