//! The lexicographic tree of arity 3: its order language, the embedding
//! into ω³ and a checked presentation on a small box.

use caucal::lextree::{check_presentation, LexTree, OrderAutomaton};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = LexTree::new(3)?;
    println!("order language: {}", tree.order_language());
    let u = tree.parse_vertex("a b^2")?;
    let v = tree.parse_vertex("a^2")?;
    println!("{u} is {} and {v} is {}", tree.vertex_to_ordinal(&u)?, tree.vertex_to_ordinal(&v)?);
    println!("{u} < {v}: {}", OrderAutomaton::for_tree(&tree).less(&tree, &u, &v)?);
    println!("cone of {u} ends at {:?}", tree.cone_sup(&u).map(|s| s.to_string()));

    let report = check_presentation(&tree, 3)?;
    println!("{} pairs checked, {} mismatches", report.pairs_checked, report.mismatches.len());
    Ok(())
}
