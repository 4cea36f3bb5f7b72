//! Train-track star orbits of a slope, one per height.
//!
//! cargo run --release --example census -- 2/5 16

use startrack::farey::parse_rational;
use startrack::height::parse_code;
use startrack::starorbit::{enumerate_orbits, enumerate_tt_orbits, horseshoe_code};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let x = parse_rational(args.next().as_deref().unwrap_or("2/5"))?;
    let bound: usize = args.next().as_deref().unwrap_or("16").parse()?;

    let all = enumerate_orbits(x, bound).len();
    let mut rows = Vec::new();
    for d in enumerate_tt_orbits(x, bound) {
        let code = horseshoe_code(&d)?;
        let p = parse_code(&code)?;
        rows.push((p.height, d.period(), code, d.k()));
    }
    rows.sort();
    println!(
        "{all} legal orbits of slope {x} up to period {bound}, {} train tracks",
        rows.len()
    );
    println!("height  period  k  code");
    for (q, period, code, k) in rows {
        println!("{:<7} {period:<7} {k}  {code}", q.to_string());
    }
    Ok(())
}
