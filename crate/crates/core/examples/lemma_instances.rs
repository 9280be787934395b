// Numeric instances of the Horace-type lemmas on small bases.

use segre_secant::space::SegreVeronesePair;
use segre_secant::terracini::{verify_lemma_instance, LemmaId, LemmaParams, RankPolicy};

pub fn run_example() -> segre_secant::Result<()> {
    let policy = RankPolicy::default();
    let cubics = SegreVeronesePair::projective(2, 3)?;
    let cases: [(LemmaId, &SegreVeronesePair, &[(&str, u64)]); 2] = [
        (LemmaId::A1a, &cubics, &[("z", 4)]),
        (LemmaId::A3a, &cubics, &[("z", 3), ("u", 2)]),
    ];
    for (lemma, base, params) in cases {
        let params: LemmaParams = params.iter().map(|&(k, v)| (k.to_string(), v)).collect();
        let rep = verify_lemma_instance(lemma, base, &params, &policy)?;
        println!(
            "{} on {}: hypotheses {}, conclusion {} {}",
            rep.lemma, rep.base, rep.hypotheses_hold, rep.conclusion, rep.conclusion_holds
        );
        for h in &rep.hypotheses {
            println!("  {:<40} {}", h.name, h.evaluated);
        }
    }
    Ok(())
}

fn main() {
    run_example().expect("lemma example");
}
