//! Pair types of an automaton over a tree and their composition.

use caucal::automaton::WordAutomaton;
use caucal::graph::format::parse_graph;
use caucal::graph::Regex;
use caucal::types::{compose_collinear, pair_type};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph("colors: a b\nr ; a ; x\nr ; b ; y\nx ; a ; x1\n")?;
    let aut: WordAutomaton = "a⁻*b".parse::<Regex>()?.compile();
    let v = |s: &str| s.to_string();

    let t1 = pair_type(&aut, &g, &v("x1"), &v("r"), 100)?;
    let t2 = pair_type(&aut, &g, &v("r"), &v("y"), 100)?;
    let direct = pair_type(&aut, &g, &v("x1"), &v("y"), 100)?;
    let composed = compose_collinear(&t1, &t2);
    println!("(x1, r): {t1}");
    println!("(r, y): {t2}");
    println!("(x1, y) composed {composed}, direct {direct}, equal: {}", composed == direct);
    Ok(())
}
