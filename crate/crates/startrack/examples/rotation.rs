//! Rotation intervals, from the code and from the Markov graph of the star map.

use startrack::farey::rat;
use startrack::rotation::{markov_rotation_interval, rotation_interval_of_code, MarkedGraph};
use startrack::starorbit::{build_tt_orbit_b, horseshoe_code, star_rotation_number};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = build_tt_orbit_b(rat(3, 7), 2, 1, 3)?;
    let code = horseshoe_code(&d)?;
    println!("orbit        {}", d.to_plain());
    println!("code         {code}");
    println!("from code    {}", rotation_interval_of_code(&code)?);
    println!("Markov graph {}", markov_rotation_interval(&d)?);
    println!("rho(P)       {}", star_rotation_number(&d)?);

    if std::env::args().any(|a| a == "--dot") {
        print!("{}", MarkedGraph::from_data(&d)?.to_dot());
    }
    Ok(())
}
