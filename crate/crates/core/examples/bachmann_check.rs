//! The Bachmann property holds for the standard system and fails for a
//! hand-made table.

use caucal::funseq::{check_bachmann, ordinals_below_omega_power, StandardSystem, TableSystem};
use caucal::ordinal::Ordinal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits: Vec<Ordinal> = ordinals_below_omega_power(3, 3)
        .into_iter()
        .filter(Ordinal::is_limit)
        .collect();
    let report = check_bachmann(&StandardSystem, &limits, 5)?;
    println!(
        "standard: {} triples checked, {} violations",
        report.checked,
        report.violations.len()
    );

    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/counterexample.table");
    let table = TableSystem::parse(&std::fs::read_to_string(path)?)?;
    let report = check_bachmann(&table, &limits, 3)?;
    for v in &report.violations {
        println!(
            "table: s({}, {}) = {} < {} but s({}, 0) = {}",
            v.x, v.n, v.s_x_n, v.y, v.y, v.s_y_0
        );
    }
    Ok(())
}
