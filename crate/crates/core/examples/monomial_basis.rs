// Sections of a Segre-Veronese bundle and the critical numbers of points.

use segre_secant::space::SegreVeronesePair;
use segre_secant::terracini::factor_monomials;

pub fn run_example() -> segre_secant::Result<()> {
    for (n, d) in [(1, 3), (2, 2)] {
        let basis = factor_monomials(n, d);
        println!(
            "P{n} deg {d}: {} monomials, first {:?}",
            basis.len(),
            basis[0]
        );
    }
    for pair in [
        "P2xP2 deg (2,3)",
        "P1xP3xP2 deg (3,3,2)",
        "P2xP2xP2 deg (2,2,2)",
    ] {
        let pair: SegreVeronesePair = pair.parse()?;
        let crit = pair.critical_z()?;
        println!(
            "{pair}: N = {}, dim = {}, critical z = {}..{}, normal form {}",
            pair.h0()?,
            pair.dim(),
            crit.z_lo,
            crit.z_hi,
            pair.cache_key()
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("monomial basis example");
}
