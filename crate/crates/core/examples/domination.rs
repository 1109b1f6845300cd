//! The shifted system against the standard one, and domination along a
//! least path.

use caucal::fgh::{check_coherent_dom, domination_experiment, EvalBudget};
use caucal::funseq::{ShiftedSystem, StandardSystem};
use caucal::ordinal::Ordinal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = EvalBudget::new(1_000_000, 4096)?;
    let (beta, alpha): (Ordinal, Ordinal) = ("2".parse()?, "w".parse()?);
    let table = domination_experiment(&StandardSystem, &ShiftedSystem, &beta, &alpha, &[1, 2], budget)?;
    print!("{}", table.to_csv());
    println!("crossover: {:?}", table.crossover);

    let (a, b): (Ordinal, Ordinal) = ("w+1".parse()?, "w".parse()?);
    let report = check_coherent_dom(&StandardSystem, &a, &b, &[1, 2, 3, 4], budget)?;
    println!("least path {} has measure {}", report.path, report.measure);
    print!("{}", report.to_csv());
    Ok(())
}
