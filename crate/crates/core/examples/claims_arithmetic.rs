// The integer claims behind the threshold table.

use segre_secant::claims::{
    check_claim11, check_claim3, check_claim7, claim1_construct, families, verify_threshold_gap,
};

pub fn run_example() -> segre_secant::Result<()> {
    let c1 = claim1_construct(2, 60, 72);
    println!(
        "claim1 (2, 60, 72): x1 = {:?}, y1 = {:?}",
        c1.get("x1"),
        c1.get("y1")
    );
    let c3 = check_claim3(4, 98);
    println!(
        "claim3 (4, 98): zbar = {:?}, holds {}",
        c3.get("zbar"),
        c3.holds
    );
    println!("claim11 (7, 231, 4): {}", check_claim11(7, 231, 4).holds);
    println!("claim7 a = 6: {}", check_claim7(6).holds);
    for f in families() {
        let rep = f.verify();
        println!(
            "{:<16} {:?} holds {}  tail {}",
            rep.name, rep.table, rep.holds, rep.tail_polynomial
        );
    }
    for r in 2..=7 {
        let gap = verify_threshold_gap(r)?;
        println!(
            "r = {r}: alpha in [{}, {}) checked directly: {}",
            gap.from, gap.to, gap.holds
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("claims example");
}
