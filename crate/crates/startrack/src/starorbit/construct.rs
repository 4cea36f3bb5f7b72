//! Explicit train-track orbits and horseshoe orbits as slope-1/2 data.

use std::cmp::Ordering;

use super::{lab, Fold, Label, StarData, StarError};
use crate::farey::{admissible_set, orbit_segment, parts, Rational};
use crate::symbolic::{is_maximal_code, unimodal_compare, EpSeq, Word};

fn admissible(x: Rational) -> Result<Vec<usize>, StarError> {
    admissible_set(x).map_err(|_| StarError::OutOfRange(x))
}

fn shift_image(m: usize, n: usize, counts: &[usize]) -> Vec<Vec<Label>> {
    (0..n)
        .map(|r| (0..counts[r]).map(|s| lab((r + m) % n, s)).collect())
        .collect()
}

/// The orbit of TT(m/n, k_i, B) attached to p/q ∈ (0,1); `i` is 1-based
/// with i < #A_{m/n}.
pub fn build_tt_orbit_b(x: Rational, i: usize, p: usize, q: usize) -> Result<StarData, StarError> {
    let ks = admissible(x)?;
    if i == 0 || i >= ks.len() {
        return Err(StarError::BadIndex(i));
    }
    if p == 0 || p >= q {
        return Err(StarError::IllegalInput(format!("{p}/{q} is not in (0,1)")));
    }
    if num_integer::gcd(p, q) != 1 {
        return Err(StarError::NotCoprime(p, q));
    }
    let (m, n) = parts(x);
    let (ki, kj) = (ks[i - 1], ks[i]);
    let mut counts = vec![1; n];
    for r in orbit_segment(m, n, kj, ki + n - m) {
        counts[r] = q + 1 - p;
    }
    for r in orbit_segment(m, n, ki, 0) {
        counts[r] = q + 1;
    }
    let mut image = shift_image(m, n, &counts);
    image[0] = (0..=q)
        .map(|s| match s.cmp(&p) {
            Ordering::Less => lab(ki, q - p + s),
            Ordering::Equal => lab(kj, q - p),
            Ordering::Greater if s < q => lab(kj, s - p),
            Ordering::Greater => lab(m, 0),
        })
        .collect();
    image[(ki + n - m) % n][q - p] = lab(ki, q);
    let mut folds = vec![Fold::B; q + 1];
    folds[p] = Fold::A;
    folds[q] = Fold::C;
    StarData::new(m, n, image, folds)
}

/// The single orbit of TT(m/n, k_i, A), for 2 ≤ i ≤ #A_{m/n}.
pub fn build_tt_orbit_a(x: Rational, i: usize) -> Result<StarData, StarError> {
    let ks = admissible(x)?;
    if i < 2 || i > ks.len() {
        return Err(StarError::BadIndex(i));
    }
    let (m, n) = parts(x);
    let ki = ks[i - 1];
    let mut counts = vec![1; n];
    for r in orbit_segment(m, n, ki, 0) {
        counts[r] = 2;
    }
    let mut image = shift_image(m, n, &counts);
    image[0] = vec![lab(ki, 1), lab(m, 0)];
    StarData::new(m, n, image, vec![Fold::A, Fold::C])
}

/// Data of the horseshoe orbit with a given maximal code, placed on the
/// slope-1/2 star: points beyond the fixed point sit on e_1.
pub fn horseshoe_data(code: &Word) -> Result<StarData, StarError> {
    if code.len() < 2 || !is_maximal_code(code) {
        return Err(StarError::NotMaximal(code.clone()));
    }
    let len = code.len();
    let points: Vec<EpSeq> = (0..len).map(|j| code.rotate(j).repeat()).collect();
    if points.iter().skip(1).any(|p| *p == points[0]) {
        return Err(StarError::IllegalInput(format!("{code} is a proper power")));
    }
    let fixed = EpSeq::periodic(Word::new(vec![1]).expect("binary"));
    let (mut right, mut left): (Vec<usize>, Vec<usize>) =
        (0..len).partition(|&j| unimodal_compare(&points[j], &fixed) == Ordering::Greater);
    right.sort_by(|&a, &b| unimodal_compare(&points[b], &points[a]));
    left.sort_by(|&a, &b| unimodal_compare(&points[a], &points[b]));
    if left.is_empty() {
        return Err(StarError::IllegalInput(format!(
            "{code} has no point left of the fixed point"
        )));
    }
    let mut where_is = vec![lab(0, 0); len];
    for (s, &j) in left.iter().enumerate() {
        where_is[j] = lab(0, s);
    }
    for (s, &j) in right.iter().enumerate() {
        where_is[j] = lab(1, s);
    }
    let image: Vec<Vec<Label>> = [&left, &right]
        .iter()
        .map(|edge| edge.iter().map(|&j| where_is[(j + 1) % len]).collect())
        .collect();
    let c = image[0]
        .iter()
        .position(|&l| l == lab(1, 0))
        .ok_or(StarError::NotCyclic)?;
    let folds = (0..left.len())
        .map(|s| match (image[0][s].r, s.cmp(&c)) {
            (_, Ordering::Equal) => Fold::C,
            (1, Ordering::Less) => Fold::A,
            _ => Fold::B,
        })
        .collect();
    StarData::new(1, 2, image, folds)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;
    use crate::farey::{left_farey_sequence, rat, xi_map};
    use crate::height::parse_code;

    /// Denominators v_1 = 1, v_2, … of the left Farey sequence.
    fn lfs_denominators(x: Rational) -> Result<Vec<usize>, StarError> {
        let seq = left_farey_sequence(x).map_err(|_| StarError::OutOfRange(x))?;
        Ok(seq.into_iter().map(|q| parts(q).1).collect())
    }

    #[test]
    fn findperm_example() {
        assert_eq!(build_tt_orbit_b(rat(3, 7), 2, 1, 3).unwrap(), exorb());
        assert_eq!(
            build_tt_orbit_b(rat(3, 7), 2, 2, 4),
            Err(StarError::NotCoprime(2, 4))
        );
        assert_eq!(
            build_tt_orbit_b(rat(3, 7), 3, 1, 3),
            Err(StarError::BadIndex(3))
        );
        let d = build_tt_orbit_b(rat(2, 5), 1, 1, 2).unwrap();
        assert_eq!(d.period(), 9);
        assert!(is_train_track(&d).unwrap());
    }

    #[test]
    fn findperm_heights() {
        for x in [rat(2, 5), rat(3, 7), rat(3, 8), rat(4, 9), rat(5, 13)] {
            let seq = left_farey_sequence(x).unwrap();
            let vs = lfs_denominators(x).unwrap();
            let (_, n) = parts(x);
            for i in 1..seq.len() {
                for (p, q) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4)] {
                    let d = build_tt_orbit_b(x, i, p, q).unwrap();
                    assert_eq!(d.period(), n + vs[i - 1] * p + vs[i] * (q - p));
                    assert!(is_train_track(&d).unwrap(), "{}", d.to_json());
                    let parsed = parse_code(&horseshoe_code(&d).unwrap()).unwrap();
                    // the period n + v_i p + v_{i+1}(q−p) pins the height to ξ((q−p)/q)
                    let want = xi_map(seq[i - 1], seq[i], rat((q - p) as i64, q as i64)).unwrap();
                    assert_eq!(parsed.height, want);
                }
            }
        }
    }

    #[test]
    fn case_a() {
        assert_eq!(build_tt_orbit_a(rat(2, 5), 2).unwrap(), dataeg());
        let d = build_tt_orbit_a(rat(3, 7), 2).unwrap();
        assert_eq!(d.counts(), vec![2, 2, 1, 1, 2, 1, 1]);
        assert!(is_train_track(&d).unwrap());
        assert_eq!(build_tt_orbit_a(rat(3, 7), 1), Err(StarError::BadIndex(1)));
        for x in [rat(3, 7), rat(4, 9), rat(5, 13), rat(5, 12)] {
            let seq = left_farey_sequence(x).unwrap();
            for i in 2..=seq.len() {
                let d = build_tt_orbit_a(x, i).unwrap();
                assert!(is_train_track(&d).unwrap());
                assert_eq!(d.period(), parts(x).1 + parts(seq[i - 1]).1);
                assert_eq!(
                    parse_code(&horseshoe_code(&d).unwrap()).unwrap().height,
                    seq[i - 1]
                );
            }
        }
    }

    #[test]
    fn horseshoe_examples() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        assert_eq!(horseshoe_data(&w("10010")).unwrap(), simporb());
        let d = horseshoe_data(&w("10")).unwrap();
        assert_eq!(d.counts(), vec![1, 1]);
        assert!(!is_legal(&d));
        let d = horseshoe_data(&w("1001")).unwrap();
        assert_eq!(d.counts(), vec![3, 1]);
        assert_eq!(star_rotation_number(&d).unwrap(), rat(1, 4));
        assert!(!is_train_track(&d).unwrap());
        assert!(matches!(
            horseshoe_data(&w("0110")),
            Err(StarError::NotMaximal(_))
        ));
    }
}
