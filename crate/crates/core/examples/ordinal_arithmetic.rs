//! Cantor normal form: parsing, comparison, addition and the ω-tower.

use caucal::ordinal::Ordinal;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a: Ordinal = "w^2*3+w+4".parse()?;
    let b: Ordinal = "w^3".parse()?;
    println!("{a} < {b}: {}", a < b);
    println!("{a} + {b} = {}", a.add(&b));
    println!("{b} + {a} = {}", b.add(&a));
    println!("successor of {a} = {}", a.succ());
    println!("{a} is a limit: {}", a.is_limit());

    let nested: Ordinal = "w^(w+1)*2+w^w".parse()?;
    println!("{nested} has depth {}", nested.depth());
    for k in 0..4 {
        println!("omega tower {k}: {}", Ordinal::omega_tower(k)?);
    }
    Ok(())
}
