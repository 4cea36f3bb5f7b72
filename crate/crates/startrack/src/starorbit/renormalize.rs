//! Renormalization between TT(1/2,0,B) and TT(m/n,m−1,B).

use super::{lab, validate_data, Fold, Label, StarData, StarError};
use crate::farey::{orbit_segment, parts, Rational};

/// φ: replicate the slope-1/2 pattern along e_{m−1} and e_m.
pub fn renormalize_phi(d: &StarData, x: Rational) -> Result<StarData, StarError> {
    if (d.m(), d.n()) != (1, 2) {
        return Err(StarError::IllegalInput("φ takes slope-1/2 data".into()));
    }
    validate_data(d, 0, Fold::B).map_err(|c| StarError::IllegalInput(format!("{c} fails")))?;
    let (m, n) = parts(x);
    if !(x > Rational::from_integer(0) && 2 * m < n) {
        return Err(StarError::OutOfRange(x));
    }
    let mut counts = vec![0; n];
    for r in orbit_segment(m, n, m - 1, 0) {
        counts[r] = d.count(0);
    }
    for r in orbit_segment(m, n, m, n - 1) {
        counts[r] = d.count(1);
    }
    let image = (0..n)
        .map(|r| {
            (0..counts[r])
                .map(|s| match r {
                    0 => {
                        let t = d.pi(lab(0, s));
                        lab(t.r + m - 1, t.s)
                    }
                    _ if r == n - 1 => lab(m - 1, d.pi(lab(1, s)).s),
                    _ => lab((r + m) % n, s),
                })
                .collect()
        })
        .collect();
    StarData::new(m, n, image, d.folds().to_vec())
}

/// ψ: the inverse of φ on legal (m/n, m−1, B) data.
pub fn renormalize_psi(d: &StarData) -> Result<StarData, StarError> {
    let (m, n) = (d.m(), d.n());
    if n < 3 {
        return Err(StarError::IllegalInput("ψ takes slope below 1/2".into()));
    }
    validate_data(d, m - 1, Fold::B).map_err(|c| StarError::IllegalInput(format!("{c} fails")))?;
    let image: Vec<Vec<Label>> = vec![
        (0..d.count(0))
            .map(|s| d.pi(lab(0, s)))
            .map(|t| lab(t.r + 1 - m, t.s))
            .collect(),
        (0..d.count(n - 1))
            .map(|s| lab(0, d.pi(lab(n - 1, s)).s))
            .collect(),
    ];
    let back = StarData::new(1, 2, image, d.folds().to_vec())
        .map_err(|e| StarError::IllegalInput(format!("no slope-1/2 preimage: {e}")))?;
    let x = d.slope();
    if renormalize_phi(&back, x).as_ref() != Ok(d) {
        return Err(StarError::IllegalInput(
            "data is not a renormalization".into(),
        ));
    }
    Ok(back)
}
