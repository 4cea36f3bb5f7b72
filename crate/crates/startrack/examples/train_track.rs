//! Bestvina-Handel graph of a star orbit: edge images, efficiency and growth.
//!
//! cargo run --example train_track [-- --dot]

use startrack::farey::rat;
use startrack::starorbit::{build_tt_orbit_a, is_train_track};
use startrack::traintrack::{build_bh_graph, check_absorbed, check_efficient, growth_rate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = build_tt_orbit_a(rat(2, 5), 2)?;
    let g = build_bh_graph(&d)?;
    if std::env::args().any(|a| a == "--dot") {
        print!("{}", g.to_dot());
        return Ok(());
    }
    println!("{}", d.to_plain());
    for &e in g.labels() {
        let image: Vec<String> = g.main_image(e).iter().map(ToString::to_string).collect();
        println!("  e{e} -> {}", image.join(" "));
    }
    println!("absorbed: {}", check_absorbed(&g));
    match check_efficient(&g)? {
        Ok(()) => println!("efficient"),
        Err(w) => println!("not efficient: {w}"),
    }
    let growth = growth_rate(&g)?;
    println!(
        "growth rate {:.10} (irreducible: {})",
        growth.rate, growth.irreducible
    );
    println!("combinatorial train track: {}", is_train_track(&d)?);
    Ok(())
}
