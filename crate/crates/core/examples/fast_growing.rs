//! Fast-growing hierarchy values, exact or cut off by the budget.

use caucal::fgh::{beth, fgh_eval_u64, EvalBudget};
use caucal::funseq::StandardSystem;
use caucal::ordinal::Ordinal;
use num_bigint::BigUint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = EvalBudget::new(1_000_000, 4096)?;
    for (a, x) in [("0", 7), ("1", 7), ("2", 7), ("3", 2), ("w", 2), ("w", 3), ("w+1", 2)] {
        let a: Ordinal = a.parse()?;
        println!("F_{a}({x}) = {}", fgh_eval_u64(&StandardSystem, &a, x, budget)?);
    }
    for n in 0..4 {
        println!("beth_{n}(2) = {}", beth(n, &BigUint::from(2u32), 1 << 16)?);
    }
    Ok(())
}
