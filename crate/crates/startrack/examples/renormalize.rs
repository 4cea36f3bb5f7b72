//! Renormalizing a slope 1/2 orbit into slope m/n and back.

use startrack::farey::{farey_parents, rat, xi_map};
use startrack::height::orbit_height;
use startrack::starorbit::{
    horseshoe_code, is_train_track, lab, renormalize_phi, renormalize_psi, Fold, StarData,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cycle = [lab(0, 0), lab(0, 1), lab(1, 1), lab(0, 2), lab(1, 0)];
    let base = StarData::from_cycle(1, 2, &cycle, &[(0, Fold::B), (1, Fold::A), (2, Fold::C)])?;
    let q = orbit_height(&horseshoe_code(&base)?)?;
    println!(
        "P:    {}  code {}  height {q}",
        base.to_plain(),
        horseshoe_code(&base)?
    );

    for x in [rat(1, 3), rat(2, 5), rat(3, 7)] {
        let up = renormalize_phi(&base, x)?;
        let code = horseshoe_code(&up)?;
        let (uv, pq) = farey_parents(x)?;
        println!("\nphi_{x}(P): {}", up.to_plain());
        println!(
            "  code {code}, height {} (xi gives {}), train track: {}",
            orbit_height(&code)?,
            xi_map(uv, pq, q)?,
            is_train_track(&up)?
        );
        assert_eq!(renormalize_psi(&up)?, base);
    }
    Ok(())
}
