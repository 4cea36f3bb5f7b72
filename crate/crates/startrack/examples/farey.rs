//! Farey parents, left Farey sequences, the map ξ and admissible sets.

use startrack::farey::{admissible_set, farey_parents, left_farey_sequence, rat, xi_map};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for x in [rat(2, 5), rat(3, 7), rat(3, 10), rat(5, 13)] {
        let (lfp, rfp) = farey_parents(x)?;
        let lfs: Vec<String> = left_farey_sequence(x)?
            .iter()
            .map(ToString::to_string)
            .collect();
        println!(
            "{x}: parents {lfp} < {rfp}, LFS ({}), A = {:?}",
            lfs.join(","),
            admissible_set(x)?
        );
    }

    // ξ squeezes (0,1) into the interval between two Farey neighbours
    let (uv, pq) = (rat(1, 3), rat(2, 5));
    for rs in [rat(1, 4), rat(1, 3), rat(1, 2), rat(2, 3)] {
        println!("xi_{{{uv},{pq}}}({rs}) = {}", xi_map(uv, pq, rs)?);
    }
    Ok(())
}
