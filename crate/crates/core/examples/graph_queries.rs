//! Unfolding, treegraph and regular path queries on a small colored graph.

use caucal::graph::format::{parse_graph, to_dot};
use caucal::graph::{regular_path_query, treegraph, unfold, Color, ExploreBound, Regex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = parse_graph("colors: a b\nu ; a ; v\nv ; b ; u\nv ; a ; w\n")?;
    let tree = unfold(&g, &"u".to_string(), 3, 1000)?;
    println!("unfolding to depth 3 has {} vertices", tree.vertex_count());

    let t = treegraph(&g, &Color::from("e"), 2, 1000)?;
    println!("treegraph up to length 2 has {} vertices", t.vertex_count());

    let r: Regex = "(ab)*a".parse()?;
    let hits = regular_path_query(&g, &"u".to_string(), &r.compile(), ExploreBound::default())?;
    for (v, word) in &hits.hits {
        println!("{v} reached by {word}");
    }
    let back: Regex = "a⁻".parse()?;
    let hits = regular_path_query(&g, &"w".to_string(), &back.compile(), ExploreBound::default())?;
    println!("inverse edge from w: {:?}", hits.targets().collect::<Vec<_>>());
    print!("{}", to_dot(&g, "example"));
    Ok(())
}
