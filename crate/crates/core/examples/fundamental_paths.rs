//! Fundamental sequences and descent paths under the standard system.

use caucal::funseq::{
    enumerate_paths, greedy_min_path, resolve_path, step_down_chain, StandardSystem,
    DEFAULT_STEP_CAP,
};
use caucal::ordinal::Ordinal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let st = StandardSystem;
    let x: Ordinal = "w^2+w".parse()?;
    for n in 0..4 {
        println!("s({x}, {n}) = {}", x.standard_fundamental(n)?);
    }

    let (a, b): (Ordinal, Ordinal) = ("w^2".parse()?, "w+2".parse()?);
    let p = greedy_min_path(&st, &a, &b, DEFAULT_STEP_CAP)?;
    println!("least path {a} -> {b}: {p} with measure {}", p.measure());
    println!("it ends at {}", resolve_path(&st, &a, &p)?);
    for q in enumerate_paths(&st, &a, &b, p.measure() + 2)? {
        println!("  {q} measure {}", q.measure());
    }

    let chain: Vec<String> = step_down_chain(&st, &"w*2+1".parse()?, DEFAULT_STEP_CAP)
        .map(|r| r.map(|o| o.to_string()))
        .collect::<Result<_, _>>()?;
    println!("step-down chain: {}", chain.join(" > "));
    Ok(())
}
