//! A level-1 pushdown system for aⁿbⁿ, its ε-contracted graph and a
//! level-2 store.

use caucal::graph::ExploreBound;
use caucal::hopda::{accepted_words, contract_system, pumping_threshold, run_word, Pds, PushdownSystem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/anbn.pds");
    let sys = PushdownSystem::parse(&std::fs::read_to_string(path)?)?;
    for c in run_word(&sys, &["a", "a", "b"], 1000)? {
        println!("after a a b: {c}");
    }

    let contracted = contract_system(&sys, ExploreBound::new(10_000, 9))?;
    let words = accepted_words(&contracted, 8, |v| {
        contracted.closures[v].iter().any(|c| c.state == "f")
    });
    for w in words {
        println!("accepted: {}", w.join(""));
    }

    let store = Pds::initial(2, "s").push(1, "x")?.push(2, "y")?;
    println!("level-2 store {store}, after pop 1: {}", store.pop(1)?);
    println!("pumping threshold for level 2, m=1, c=3: {}", pumping_threshold(2, 1, 3, 64)?);
    Ok(())
}
