//! Heights of horseshoe codes and the words c_q, w_q.
//!
//! cargo run --example heights -- 10011011001011010

use startrack::farey::rat;
use startrack::height::{orbit_height, parse_code, prefix_word, star_decoration};
use startrack::Word;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let code: Word = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("10011011001011010")
        .parse()?;
    let q = orbit_height(&code)?;
    println!("code        {code}");
    println!("height      {q}");
    match parse_code(&code) {
        Ok(p) => println!("prefix      {}\ndecoration  {}", p.prefix, p.decoration),
        Err(e) => println!("no decoration: {e}"),
    }

    println!("\n q      c_q           w_q");
    for q in [
        rat(1, 3),
        rat(1, 4),
        rat(2, 5),
        rat(3, 7),
        rat(3, 10),
        rat(1, 2),
    ] {
        println!(
            "{:<6} {:<13} {}",
            q.to_string(),
            prefix_word(q)?.to_string(),
            star_decoration(q)?
        );
    }
    Ok(())
}
