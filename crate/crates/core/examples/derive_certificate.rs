// Derive a certificate, replay it, and watch a tampered copy fail.

use segre_secant::engine::{derive, validate_certificate, Certificate, DEFAULT_BUDGET};
use segre_secant::space::SegreVeronesePair;

pub fn run_example() -> segre_secant::Result<()> {
    let pair: SegreVeronesePair = "P2xP2xP2xP2 deg (2,2,2,2)".parse()?;
    let cert = derive(&pair, DEFAULT_BUDGET)?;
    let json = cert.to_json();
    println!("{json}");
    let reread = Certificate::from_json(&json)?;
    println!("replays: {}", validate_certificate(&reread)?);

    let mut tampered = reread;
    tampered.root.hypotheses.insert("alpha".into(), 175.into());
    println!("tampered replays: {}", validate_certificate(&tampered)?);

    let other = derive(&"P1xP3xP2 deg (3,3,2)".parse()?, DEFAULT_BUDGET)?;
    println!(
        "{:?} via {:?} over {}",
        other.verdict(),
        other.root.rule,
        other.root.children[0].pair
    );
    Ok(())
}

fn main() {
    run_example().expect("certificate example");
}
