// Known classifications and the single-step induction rules.

use segre_secant::engine::{Engine, KnowledgeBase};
use segre_secant::space::SegreVeronesePair;

pub fn run_example() -> segre_secant::Result<()> {
    let kb = KnowledgeBase::standard();
    for text in [
        "P2 deg (4)",
        "P2xP2 deg (3,4)",
        "P1xP1 deg (2,6)",
        "P2xP1 deg (2,4)",
        "P2xP2xP2 deg (2,2,2)",
    ] {
        let pair: SegreVeronesePair = text.parse()?;
        println!("{:<24} {:?}", pair.to_string(), kb.lookup(&pair));
    }
    let mut engine = Engine::default();
    for text in ["P2xP2 deg (2,3)", "P2 deg (2)", "P1 deg (5)"] {
        let check = engine.rule_a41_applicable(&text.parse()?)?;
        println!("P1 rule over {text}: {}", check.applicable);
    }
    for text in ["P2xP2xP2 deg (2,2,2)", "P2xP2 deg (3,3)", "P2 deg (3)"] {
        let check = engine.rule_a5_applicable(&text.parse()?)?;
        println!("P2 rule over {text}: {}", check.applicable);
    }
    Ok(())
}

fn main() {
    run_example().expect("knowledge base example");
}
