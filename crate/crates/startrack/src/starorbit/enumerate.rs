//! Census of legal ⋆-orbit data up to a period bound.

use super::{is_legal, is_train_track, lab, Fold, Label, StarData};
use crate::farey::{orbit_segment, parts, Rational};

/// All legal data of slope `x` with period at most `max_period`, sorted by
/// period and then by serialization.
pub fn enumerate_orbits(x: Rational, max_period: usize) -> Vec<StarData> {
    enumerate_orbits_parallel(x, max_period, 1)
}

/// As [`enumerate_orbits`], spreading the count vectors over `jobs` threads.
/// The output does not depend on `jobs`.
pub fn enumerate_orbits_parallel(x: Rational, max_period: usize, jobs: usize) -> Vec<StarData> {
    let (m, n) = parts(x);
    if m == 0 || 2 * m > n {
        return Vec::new();
    }
    let weights: Vec<usize> = (0..=m).map(|j| orbit_segment(m, n, j, 0).len()).collect();
    let mut vectors = Vec::new();
    counts_rec(
        m,
        &weights,
        0,
        max_period,
        &mut vec![0; m + 1],
        &mut vectors,
    );
    let jobs = jobs.max(1).min(vectors.len().max(1));
    let out: Vec<StarData> = if jobs == 1 {
        let mut out = Vec::new();
        vectors.iter().for_each(|c| place_counts(m, n, c, &mut out));
        out
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|t| {
                    let vectors = &vectors;
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        vectors
                            .iter()
                            .skip(t)
                            .step_by(jobs)
                            .for_each(|c| place_counts(m, n, c, &mut out));
                        out
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("enumeration thread"))
                .collect()
        })
    };
    let mut keyed: Vec<(usize, String, StarData)> = out
        .into_iter()
        .map(|d| (d.period(), d.to_json(), d))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|(_, _, d)| d).collect()
}

pub fn enumerate_tt_orbits(x: Rational, max_period: usize) -> Vec<StarData> {
    enumerate_orbits(x, max_period)
        .into_iter()
        .filter(|d| is_train_track(d).unwrap_or(false))
        .collect()
}

/// Choose c_j = #{s : π_1(0,s) = j} for j = 0..=m, with c_m ≥ 1 and k < m.
fn counts_rec(
    m: usize,
    weights: &[usize],
    j: usize,
    budget: usize,
    c: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if j > m {
        if c[..m].iter().any(|&a| a > 0) {
            out.push(c.clone());
        }
        return;
    }
    let mut a = usize::from(j == m);
    while a * weights[j] <= budget {
        c[j] = a;
        counts_rec(m, weights, j + 1, budget - a * weights[j], c, out);
        a += 1;
    }
    c[j] = 0;
}

fn place_counts(m: usize, n: usize, c: &[usize], out: &mut Vec<StarData>) {
    let mut counts = vec![0; n];
    let mut acc = 0;
    for r in orbit_segment(m, n, m, 0) {
        acc += if r <= m { c[r] } else { 0 };
        counts[r] = acc;
    }
    let k = c.iter().position(|&a| a > 0).expect("nonempty");
    let mut image: Vec<Vec<Label>> = counts
        .iter()
        .map(|&t| vec![lab(usize::MAX, 0); t])
        .collect();
    let mut folds = vec![Fold::B; counts[0]];
    let mut state = Fill {
        m,
        n,
        c,
        k,
        counts: &counts,
        out,
    };
    state.edge(k, 0, &mut image, &mut folds);
}

struct Fill<'a> {
    m: usize,
    n: usize,
    c: &'a [usize],
    k: usize,
    counts: &'a [usize],
    out: &'a mut Vec<StarData>,
}

impl Fill<'_> {
    /// Fill the e_0 group landing on edge j, whose first point is (0,first).
    fn edge(&mut self, j: usize, first: usize, image: &mut Vec<Vec<Label>>, folds: &mut Vec<Fold>) {
        if j > self.m {
            self.finish(image, folds);
            return;
        }
        let cj = self.c[j];
        if cj == 0 {
            self.edge(j + 1, first, image, folds);
            return;
        }
        if j == self.m {
            // slots 0..c_m all come from e_0, slot 0 from the fold point
            let free: Vec<usize> = (1..cj).collect();
            for amask in 0u64..(1 << free.len()) {
                let (a_slots, b_slots) = split(&free, amask);
                if j == self.k && first == 0 && a_slots.is_empty() {
                    // 0 ∈ C is never legal
                    continue;
                }
                let mut s = first;
                for &slot in a_slots.iter().rev() {
                    image[0][s] = lab(j, slot);
                    folds[s] = Fold::A;
                    s += 1;
                }
                image[0][s] = lab(j, 0);
                folds[s] = Fold::C;
                s += 1;
                for &slot in &b_slots {
                    image[0][s] = lab(j, slot);
                    folds[s] = Fold::B;
                    s += 1;
                }
                self.finish(image, folds);
            }
            return;
        }
        let slots: Vec<usize> = (1..self.counts[j]).collect();
        for chosen in combinations(&slots, cj) {
            let max_mask: u64 = if j == 0 { 1 } else { 1 << cj };
            for amask in 0..max_mask {
                let (a_slots, b_slots) = split(&chosen, amask);
                let mut s = first;
                for &slot in a_slots.iter().rev() {
                    image[0][s] = lab(j, slot);
                    folds[s] = Fold::A;
                    s += 1;
                }
                for &slot in &b_slots {
                    image[0][s] = lab(j, slot);
                    folds[s] = Fold::B;
                    s += 1;
                }
                let from = (j + self.n - self.m) % self.n;
                let mut rest = (0..self.counts[j]).filter(|t| !chosen.contains(t));
                for s in 0..self.counts[from] {
                    image[from][s] = lab(j, rest.next().expect("slot count"));
                }
                self.edge(j + 1, first + cj, image, folds);
            }
        }
    }

    fn finish(&mut self, image: &mut [Vec<Label>], folds: &[Fold]) {
        // edges not fed by e_0 receive in order
        for r in 1..self.n {
            let to = (r + self.m) % self.n;
            if to >= self.m || self.c[to] == 0 {
                for s in 0..self.counts[r] {
                    image[r][s] = lab(to, s);
                }
            }
        }
        if !single_cycle(image) {
            return;
        }
        if let Ok(d) = StarData::new(self.m, self.n, image.to_vec(), folds.to_vec()) {
            debug_assert!(is_legal(&d), "enumerated illegal data {}", d.to_json());
            self.out.push(d);
        }
    }
}

fn split(items: &[usize], mask: u64) -> (Vec<usize>, Vec<usize>) {
    let (a, b): (Vec<_>, Vec<_>) = items
        .iter()
        .enumerate()
        .partition(|(i, _)| mask >> i & 1 == 1);
    (
        a.into_iter().map(|(_, &x)| x).collect(),
        b.into_iter().map(|(_, &x)| x).collect(),
    )
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

fn single_cycle(image: &[Vec<Label>]) -> bool {
    let total: usize = image.iter().map(Vec::len).sum();
    let mut cur = lab(0, 0);
    for step in 1..=total {
        cur = image[cur.r][cur.s];
        if cur == lab(0, 0) {
            return step == total;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::*;
    use super::*;
    use crate::farey::parts;
    use crate::farey::rat;
    use crate::height::{orbit_height, star_family_check};
    use crate::rotation::markov_rotation_interval;

    #[test]
    fn small_census() {
        let tt: Vec<_> = enumerate_tt_orbits(rat(1, 2), 5);
        assert_eq!(tt, vec![simporb()]);
        let tt = enumerate_tt_orbits(rat(1, 3), 7);
        assert_eq!(tt.len(), 1);
        assert_eq!(
            orbit_height(&horseshoe_code(&tt[0]).unwrap()).unwrap(),
            rat(1, 4)
        );
        assert!(enumerate_orbits(rat(2, 5), 8).contains(&dataeg()));
    }

    #[test]
    fn listing_is_sorted_and_legal() {
        let all = enumerate_orbits(rat(2, 5), 12);
        assert!(all
            .windows(2)
            .all(|w| (w[0].period(), w[0].to_json()) < (w[1].period(), w[1].to_json())));
        assert!(all.iter().all(is_legal));
        assert!(all.iter().all(|d| d.period() <= 12));
        assert_eq!(enumerate_orbits_parallel(rat(2, 5), 12, 4), all);
    }

    #[test]
    fn tt_prime_forms_agree() {
        for x in [rat(1, 2), rat(1, 3), rat(2, 5), rat(3, 7)] {
            for d in enumerate_orbits(x, 14) {
                let full = is_train_track(&d).unwrap();
                if tt_prime_a(&d) && tt_prime_d(&d) {
                    continue;
                }
                assert!(!full, "{}", d.to_json());
            }
        }
    }

    #[test]
    fn codes_fall_in_star_families() {
        for x in [rat(1, 3), rat(1, 4), rat(2, 5), rat(3, 7)] {
            for d in enumerate_tt_orbits(x, 16) {
                let code = horseshoe_code(&d).unwrap();
                let (uv, mn) = star_family_check(&code)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{code}"));
                assert_eq!(mn, x, "{code}");
                assert_eq!(code.len(), parts(uv).1 + parts(x).1);
                assert_eq!(orbit_height(&code).unwrap(), uv);
            }
        }
    }

    #[test]
    fn rotation_number_lies_in_markov_interval() {
        for x in [rat(1, 3), rat(2, 5), rat(3, 7)] {
            for d in enumerate_orbits(x, 13) {
                let r = markov_rotation_interval(&d).unwrap();
                let rho = star_rotation_number(&d).unwrap();
                assert!(r.lo <= rho && rho <= r.hi, "{}", d.to_json());
                if is_train_track(&d).unwrap() {
                    assert!(r.interior_contains(rho), "{}", d.to_json());
                }
            }
        }
    }
}
