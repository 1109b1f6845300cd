//! Cofinal sequences built from the order automaton, then thinned until the
//! Bachmann property holds.

use caucal::funseq::check_bachmann;
use caucal::lextree::{
    bachmannize, construct_cofinal, BachmannCofinal, ConstructedCofinal, LexTree,
    OrderAutomaton, TreeSystem,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tree = LexTree::new(3)?;
    let order = OrderAutomaton::for_tree(&tree);
    let show = |vs: &[caucal::lextree::LexVertex]| {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
    };

    let refined = BachmannCofinal::new(ConstructedCofinal::new(tree, order.clone()), order.clone());
    for text in ["a", "a b", "a^2"] {
        let v0 = tree.parse_vertex(text)?;
        println!("{v0}: base {}", show(&construct_cofinal(&tree, &v0, 4, &order)?));
        println!("{v0}: refined {}", show(&bachmannize(&refined, &v0, 4)?));
    }

    let limits: Vec<_> = tree
        .box_vertices(3)
        .into_iter()
        .filter(|v| tree.is_limit_vertex(v).unwrap_or(false))
        .collect();
    let report = check_bachmann(&TreeSystem::new(refined), &limits, 4)?;
    println!("{} limits, {} violations", limits.len(), report.violations.len());
    Ok(())
}
