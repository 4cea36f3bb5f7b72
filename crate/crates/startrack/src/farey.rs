//! Exact Farey arithmetic on (0,1/2]: parents, left Farey sequences, orbit
//! segments of `+m mod n`, the ξ bijection and admissible sets.

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

/// Exact fraction in lowest terms. Displays and parses as `m/n` (or `0`).
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("{0} is outside the allowed range")]
    OutOfRange(Rational),
    #[error("{0} and {1} are not Farey neighbours")]
    NotNeighbours(Rational, Rational),
}

pub fn rat(m: i64, n: i64) -> Rational {
    Ratio::new(m, n)
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Numerator and denominator as indices.
pub fn parts(x: Rational) -> (usize, usize) {
    (*x.numer() as usize, *x.denom() as usize)
}

fn in_open_half(x: Rational) -> Result<(), FareyError> {
    if x > rat(0, 1) && x < rat(1, 2) {
        Ok(())
    } else {
        Err(FareyError::OutOfRange(x))
    }
}

/// Farey parents of any x in (0,1), without the (0,1/2) restriction.
pub(crate) fn parents_in_unit(x: Rational) -> (Rational, Rational) {
    let (m, n) = (*x.numer(), *x.denom());
    if m == 1 && n == 1 {
        unreachable!("1 has no parents in (0,1)");
    }
    // v = m⁻¹ mod n gives the left neighbour u/v with mv - nu = 1
    let g = m.extended_gcd(&n);
    let v = g.x.rem_euclid(n);
    let v = if v == 0 { n } else { v };
    let u = (m * v - 1) / n;
    (rat(u, v), rat(m - u, n - v))
}

pub fn farey_parents(x: Rational) -> Result<(Rational, Rational), FareyError> {
    in_open_half(x)?;
    Ok(parents_in_unit(x))
}

pub fn left_farey_sequence(x: Rational) -> Result<Vec<Rational>, FareyError> {
    in_open_half(x)?;
    let mut seq = vec![];
    let mut cur = parents_in_unit(x).0;
    while cur != rat(0, 1) {
        seq.push(cur);
        cur = parents_in_unit(cur).0;
    }
    seq.push(cur);
    seq.reverse();
    Ok(seq)
}

/// Immediate Farey children (left, right) of x in (0,1).
pub fn farey_children(x: Rational) -> (Rational, Rational) {
    let (l, r) = if x == rat(1, 2) {
        (rat(0, 1), rat(1, 1))
    } else {
        parents_in_unit(x)
    };
    (mediant(x, l), mediant(x, r))
}

pub fn mediant(a: Rational, b: Rational) -> Rational {
    rat(a.numer() + b.numer(), a.denom() + b.denom())
}

/// `O_{m/n}[r,s]`: the walk r, r+m, r+2m, … (mod n) stopping at s.
pub fn orbit_segment(m: usize, n: usize, r: usize, s: usize) -> Vec<usize> {
    let mut seg = vec![r % n];
    let mut cur = r % n;
    while cur != s % n {
        cur = (cur + m) % n;
        seg.push(cur);
    }
    seg
}

fn check_neighbours(uv: Rational, pq: Rational) -> Result<(), FareyError> {
    let (u, v, p, q) = (*uv.numer(), *uv.denom(), *pq.numer(), *pq.denom());
    if p * v - q * u == 1 {
        Ok(())
    } else {
        Err(FareyError::NotNeighbours(uv, pq))
    }
}

/// ξ_{u/v,p/q}(r/s) = (rp + (s−r)u) / (rq + (s−r)v).
pub fn xi_map(uv: Rational, pq: Rational, rs: Rational) -> Result<Rational, FareyError> {
    check_neighbours(uv, pq)?;
    if rs <= rat(0, 1) || rs >= rat(1, 1) {
        return Err(FareyError::OutOfRange(rs));
    }
    let (u, v, p, q) = (*uv.numer(), *uv.denom(), *pq.numer(), *pq.denom());
    let (r, s) = (*rs.numer(), *rs.denom());
    Ok(rat(r * p + (s - r) * u, r * q + (s - r) * v))
}

pub fn xi_inverse(uv: Rational, pq: Rational, x: Rational) -> Result<Rational, FareyError> {
    check_neighbours(uv, pq)?;
    if x <= uv || x >= pq {
        return Err(FareyError::OutOfRange(x));
    }
    let (u, v, p, q) = (*uv.numer(), *uv.denom(), *pq.numer(), *pq.denom());
    let (m, n) = (*x.numer(), *x.denom());
    Ok(rat(v * m - u * n, (v - q) * m + (p - u) * n))
}

/// `R_{m/n} = O_{m/n}[m, n−1]`.
pub fn r_set(m: usize, n: usize) -> Vec<usize> {
    orbit_segment(m, n, m, n - 1)
}

/// ψ_{m/n}(k) = k − #(R_{m/n} ∩ [0,k]).
pub fn psi_index(m: usize, n: usize, k: usize) -> usize {
    let r = r_set(m, n);
    k - r.iter().filter(|&&x| x <= k).count()
}

/// k ∈ [0,m−1] with [k+1, m−1] ∩ O_{m/n}[k,0] = ∅.
pub fn admissible_direct(m: usize, n: usize) -> Vec<usize> {
    (0..m)
        .filter(|&k| orbit_segment(m, n, k, 0).iter().all(|&r| r <= k || r >= m))
        .collect()
}

/// A_{m/n} = {m−1} ∪ ψ⁻¹(A_{LFP(m/n)}), with A_{1/n} = {0}.
pub fn admissible_recursive(m: usize, n: usize) -> Vec<usize> {
    if m == 1 {
        return vec![0];
    }
    let (uv, _) = parents_in_unit(rat(m as i64, n as i64));
    let (u, v) = parts(uv);
    let lower = admissible_recursive(u, v);
    let r = r_set(m, n);
    let mut out: Vec<usize> = (0..m - 1)
        .filter(|k| !r.contains(k))
        .filter(|&k| lower.contains(&psi_index(m, n, k)))
        .collect();
    out.push(m - 1);
    out
}

pub fn admissible_set(x: Rational) -> Result<Vec<usize>, FareyError> {
    in_open_half(x)?;
    let (m, n) = parts(x);
    let set = admissible_recursive(m, n);
    debug_assert_eq!(set, admissible_direct(m, n));
    Ok(set)
}

/// All reduced m/n in (0,1/2) with n ≤ bound.
pub fn slopes_up_to(bound: usize) -> Vec<Rational> {
    let mut v = Vec::new();
    for n in 3..=bound as i64 {
        for m in 1..n {
            if 2 * m < n && m.gcd(&n) == 1 {
                v.push(rat(m, n));
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parents_examples() {
        assert_eq!(farey_parents(q("3/8")).unwrap(), (q("1/3"), q("2/5")));
        assert_eq!(farey_parents(q("3/10")).unwrap(), (q("2/7"), q("1/3")));
        assert_eq!(farey_parents(q("1/5")).unwrap(), (q("0"), q("1/4")));
        assert!(farey_parents(q("1/2")).is_err());
        assert_eq!(farey_children(q("2/5")), (q("3/8"), q("3/7")));
        assert_eq!(farey_children(q("1/2")), (q("1/3"), q("2/3")));
    }

    #[test]
    fn lfs_examples() {
        assert_eq!(
            left_farey_sequence(q("3/10")).unwrap(),
            vec![q("0"), q("1/4"), q("2/7")]
        );
        assert_eq!(
            left_farey_sequence(q("3/7")).unwrap(),
            vec![q("0"), q("1/3"), q("2/5")]
        );
        assert_eq!(left_farey_sequence(q("1/4")).unwrap(), vec![q("0")]);
    }

    #[test]
    fn segments() {
        assert_eq!(orbit_segment(3, 7, 1, 0), vec![1, 4, 0]);
        assert_eq!(orbit_segment(3, 7, 3, 6), vec![3, 6]);
        assert_eq!(orbit_segment(3, 7, 5, 5), vec![5]);
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_map(q("1/3"), q("2/5"), q("1/3")).unwrap(), q("4/11"));
        assert_eq!(xi_map(q("0"), q("1/2"), q("1/3")).unwrap(), q("1/4"));
        assert_eq!(xi_map(q("1/3"), q("2/5"), q("1/2")).unwrap(), q("3/8"));
        assert!(xi_map(q("1/4"), q("2/5"), q("1/2")).is_err());
    }

    #[test]
    fn admissible_examples() {
        assert_eq!(admissible_set(q("3/7")).unwrap(), vec![0, 1, 2]);
        assert_eq!(admissible_set(q("2/5")).unwrap(), vec![0, 1]);
        assert_eq!(admissible_set(q("1/6")).unwrap(), vec![0]);
        assert_eq!(admissible_direct(3, 10), admissible_recursive(3, 10));
    }

    #[test]
    fn tcard_cardinalities() {
        for x in slopes_up_to(30) {
            let (m, n) = parts(x);
            let lfs = left_farey_sequence(x).unwrap();
            let adm = admissible_set(x).unwrap();
            assert_eq!(adm.len(), lfs.len());
            for (k, uv) in adm.iter().zip(&lfs) {
                assert_eq!(orbit_segment(m, n, *k, 0).len(), *uv.denom() as usize);
            }
            // decreasing along O[m,0]
            let walk = orbit_segment(m, n, m, 0);
            let seen: Vec<usize> = walk.into_iter().filter(|r| adm.contains(r)).collect();
            assert!(seen.windows(2).all(|w| w[0] > w[1]));
        }
    }
}
