//! Building the star map f_{m/n} from f_{1/2} by glueing and pulling tight.
//!
//! cargo run --example pruning -- 3/10

use startrack::farey::parse_rational;
use startrack::pruning::{construct_from_horseshoe, endo_equivalent, f_endo};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = parse_rational(std::env::args().nth(1).as_deref().unwrap_or("3/10"))?;
    let (built, trace) = construct_from_horseshoe(x)?;
    print!("{trace}");
    println!("\nresult:\n{built}");
    println!("matches f_{x}: {}", endo_equivalent(&built, &f_endo(x)?));
    Ok(())
}
