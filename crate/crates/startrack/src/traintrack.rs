//! Bestvina–Handel star graphs of ⋆-orbits: image edge-paths, the absorbed
//! and efficiency tests, transition matrices and growth rates.
//!
//! Geometry enters only through the sub-strip layout of the thick star map.
//! In the strip of e_j the image of e_0 runs outwards on the left (these
//! carry the A images), wraps the tip, and returns on the right (B images);
//! the straight image of e_{j−m} runs between them. On e_0 the initial leg of
//! f(e_0) runs to the right of the image of e_{n−m}. An arc passing a point
//! on the side of its vertex goes straight through that vertex; on the other
//! side it goes round the peripheral loop.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::starorbit::{is_legal, lab, side_partition, Fold, Label, StarData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackError {
    #[error("illegal data")]
    IllegalData,
    #[error("graph is not absorbed: image of e{0} starts or ends with a peripheral edge")]
    NotAbsorbed(Label),
    #[error("graph is not efficient: {0}")]
    NotEfficient(Witness),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// main edge e_{r,s}, forwards when `true`
    Main(Label, bool),
    /// peripheral loop p_{r,s}, anticlockwise when `true`
    Peri(Label, bool),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::Main(l, true) => write!(f, "e{l}"),
            Letter::Main(l, false) => write!(f, "E{l}"),
            Letter::Peri(l, true) => write!(f, "p{l}"),
            Letter::Peri(l, false) => write!(f, "P{l}"),
        }
    }
}

/// An adjacent pair of main edges in some image that is not a passage
/// through the centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub edge: Label,
    pub pair: (Letter, Letter),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "image of e{} contains {}{}",
            self.edge, self.pair.0, self.pair.1
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Main(Label, bool),
    /// an e_0 image lying on this branch
    Land(Label),
    Pass(Label, Side),
    Wrap(Label),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhGraph {
    data: StarData,
    left: BTreeSet<Label>,
    labels: Vec<Label>,
    images: Vec<Vec<Letter>>,
}

impl BhGraph {
    /// Vertices of the labels in `left` sit to the left of their points;
    /// all other non-endpoint vertices sit to the right.
    pub fn new(d: &StarData, left: &BTreeSet<Label>) -> Result<Self, TrackError> {
        if !is_legal(d) {
            return Err(TrackError::IllegalData);
        }
        let labels: Vec<Label> = d.labels().collect();
        let inv = d.inverse();
        let origin = |l: Label| inv[l.r][l.s];
        let side = |l: Label| {
            if left.contains(&l) {
                Side::Left
            } else {
                Side::Right
            }
        };
        let flips = |l: Label| l.r == 0 && d.fold(l.s) == Fold::A;
        let image_side = |l: Label| match (side(l), flips(l)) {
            (s, false) => s,
            (Side::Left, true) => Side::Right,
            (Side::Right, true) => Side::Left,
        };
        let (m, n) = (d.m(), d.n());

        // the path f(e_0) = e_0 ē_1 e_1 … ē_m e_m, step by step
        let mut path = Vec::new();
        let from_e0 = |l: Label| origin(l).r == 0;
        let on_branch = |l: Label, outward: bool| {
            let o = origin(l);
            o.r == 0
                && match d.fold(o.s) {
                    Fold::A => outward,
                    Fold::B => !outward,
                    Fold::C => true,
                }
        };
        for t in 0..d.count(0) {
            let l = lab(0, t);
            path.push(if on_branch(l, false) {
                Step::Land(l)
            } else {
                Step::Pass(l, Side::Right)
            });
            path.push(Step::Main(l, true));
        }
        for j in 1..=m {
            for t in (0..d.count(j)).rev() {
                let l = lab(j, t);
                path.push(Step::Main(l, false));
                if t > 0 {
                    path.push(if on_branch(l, true) {
                        Step::Land(l)
                    } else {
                        Step::Pass(l, Side::Left)
                    });
                }
            }
            path.push(if j == m {
                Step::Land(lab(m, 0))
            } else {
                Step::Wrap(lab(j, 0))
            });
            for t in 0..d.count(j) {
                let l = lab(j, t);
                if t > 0 {
                    path.push(if on_branch(l, false) {
                        Step::Land(l)
                    } else {
                        Step::Pass(l, Side::Right)
                    });
                }
                path.push(Step::Main(l, true));
            }
        }
        let landing: Vec<usize> = (0..d.count(0))
            .map(|s| {
                let target = d.pi(lab(0, s));
                path.iter()
                    .position(|st| matches!(st, Step::Land(l) if *l == target))
                    .expect("landing")
            })
            .collect();

        let mut images = Vec::with_capacity(labels.len());
        for &e in &labels {
            let last = e.s + 1 == d.count(e.r);
            let steps: Vec<Step> = if e.r == 0 {
                let to = if last { path.len() } else { landing[e.s + 1] };
                path[landing[e.s] + 1..to].to_vec()
            } else {
                let j = (e.r + m) % n;
                let lo = d.pi(e).s;
                let hi = if last {
                    d.count(j)
                } else {
                    d.pi(lab(e.r, e.s + 1)).s
                };
                let mut v = vec![Step::Main(lab(j, lo), true)];
                for t in lo + 1..hi {
                    let l = lab(j, t);
                    let o = origin(l);
                    let pass = match (o.r, d.fold(o.s)) {
                        (0, Fold::A) => Side::Right,
                        _ => Side::Left,
                    };
                    debug_assert!(from_e0(l));
                    v.push(Step::Pass(l, pass));
                    v.push(Step::Main(l, true));
                }
                v
            };
            let mut word = Vec::new();
            let endpoint = |l: Label| l.s == 0;
            let start = d.pi(e);
            if e.s > 0 && !endpoint(start) && image_side(e) != side(start) {
                word.push(Letter::Peri(start, true));
            }
            for st in steps {
                match st {
                    Step::Main(l, fwd) => word.push(Letter::Main(l, fwd)),
                    Step::Land(_) => unreachable!("segments run between landings"),
                    Step::Pass(l, s) => {
                        debug_assert!(!endpoint(l), "endpoint {l} passed without wrapping");
                        if s != side(l) {
                            word.push(Letter::Peri(l, s == Side::Right));
                        }
                    }
                    Step::Wrap(l) => word.push(Letter::Peri(l, true)),
                }
            }
            if !last {
                let next = lab(e.r, e.s + 1);
                let end = d.pi(next);
                if !endpoint(end) && image_side(next) != side(end) {
                    word.push(Letter::Peri(end, true));
                }
            }
            images.push(word);
        }
        Ok(BhGraph {
            data: d.clone(),
            left: left.clone(),
            labels,
            images,
        })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn main_image(&self, e: Label) -> &[Letter] {
        let i = self.labels.iter().position(|&l| l == e).expect("label");
        &self.images[i]
    }

    pub fn left(&self) -> &BTreeSet<Label> {
        &self.left
    }

    /// p_{r,s} ↦ p_{π(r,s)}, reversed at the A points.
    pub fn peripheral_image(&self, l: Label) -> Letter {
        let rev = l.r == 0 && self.data.fold(l.s) == Fold::A;
        Letter::Peri(self.data.pi(l), !rev)
    }

    pub fn main_count(&self) -> usize {
        self.labels.len()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bh {\n  v [shape=doublecircle];\n");
        for &l in &self.labels {
            let port = if self.left.contains(&l) { "w" } else { "e" };
            out.push_str(&format!("  \"v{l}\" [label=\"{l}\"];\n"));
            out.push_str(&format!(
                "  \"v{l}\":{port} -> \"v{l}\":{port} [label=\"p{l}\"];\n"
            ));
        }
        for &l in &self.labels {
            let head = if l.s + 1 == self.data.count(l.r) {
                "v".to_string()
            } else {
                format!("\"v{}\"", lab(l.r, l.s + 1))
            };
            let img: Vec<String> = self.main_image(l).iter().map(|x| x.to_string()).collect();
            out.push_str(&format!(
                "  \"v{l}\" -> {head} [label=\"e{l}: {}\"];\n",
                img.join(" ")
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_bh_graph(d: &StarData) -> Result<BhGraph, TrackError> {
    let sides = side_partition(d).map_err(|_| TrackError::IllegalData)?;
    BhGraph::new(d, &sides.beta)
}

pub fn check_absorbed(g: &BhGraph) -> bool {
    g.images.iter().all(|w| {
        matches!(w.first(), Some(Letter::Main(..))) && matches!(w.last(), Some(Letter::Main(..)))
    })
}

fn through_centre(a: Letter, b: Letter, g: &BhGraph) -> bool {
    match (a, b) {
        (Letter::Main(x, true), Letter::Main(y, false)) => {
            x.r != y.r && x.s + 1 == g.data.count(x.r) && y.s + 1 == g.data.count(y.r)
        }
        _ => false,
    }
}

/// Images must read m₁p₁m₂…m_k with each m a main edge or a passage
/// e_{u,N_u−1}ē_{v,N_v−1} through the centre.
pub fn check_efficient(g: &BhGraph) -> Result<Result<(), Witness>, TrackError> {
    for (i, w) in g.images.iter().enumerate() {
        if !matches!(w.first(), Some(Letter::Main(..)))
            || !matches!(w.last(), Some(Letter::Main(..)))
        {
            return Err(TrackError::NotAbsorbed(g.labels[i]));
        }
        let mut k = 0;
        while k < w.len() {
            let mut step = 1;
            if k + 1 < w.len() && through_centre(w[k], w[k + 1], g) {
                step = 2;
            }
            let next = k + step;
            if next < w.len() {
                match w[next] {
                    Letter::Peri(..) => step += 1,
                    Letter::Main(..) => {
                        return Ok(Err(Witness {
                            edge: g.labels[i],
                            pair: (w[next - 1], w[next]),
                        }));
                    }
                }
            }
            k += step;
        }
    }
    debug_assert!(no_cancellation(g, g.data.period() - g.data.n()));
    Ok(Ok(()))
}

/// Iterate the graph map on every main edge and look for xx̄.
pub fn no_cancellation(g: &BhGraph, rounds: usize) -> bool {
    let index = |l: Label| g.labels.iter().position(|&x| x == l).expect("label");
    let apply = |w: &[Letter]| -> Vec<Letter> {
        let mut out = Vec::new();
        for &x in w {
            match x {
                Letter::Main(l, true) => out.extend_from_slice(&g.images[index(l)]),
                Letter::Main(l, false) => {
                    out.extend(g.images[index(l)].iter().rev().map(|&y| invert(y)))
                }
                Letter::Peri(l, ccw) => {
                    let p = g.peripheral_image(l);
                    out.push(if ccw { p } else { invert(p) });
                }
            }
        }
        out
    };
    for e in &g.labels {
        let mut w = vec![Letter::Main(*e, true)];
        for _ in 0..rounds {
            w = apply(&w);
            if w.windows(2).any(|p| p[1] == invert(p[0])) {
                return false;
            }
            if w.len() > 1 << 16 {
                break;
            }
        }
    }
    true
}

fn invert(x: Letter) -> Letter {
    match x {
        Letter::Main(l, f) => Letter::Main(l, !f),
        Letter::Peri(l, f) => Letter::Peri(l, !f),
    }
}

/// Absorbed and efficient with L = β and R = α.
pub fn has_star_train_track(d: &StarData) -> Result<bool, TrackError> {
    let g = build_bh_graph(d)?;
    if !check_absorbed(&g) {
        return Ok(false);
    }
    Ok(check_efficient(&g)?.is_ok())
}

/// Entry (a,b) counts occurrences of main edge b in the image of main edge a.
pub fn transition_matrix(g: &BhGraph) -> Vec<Vec<u64>> {
    let size = g.labels.len();
    let mut t = vec![vec![0; size]; size];
    for (a, w) in g.images.iter().enumerate() {
        for x in w {
            if let Letter::Main(l, _) = x {
                let b = g.labels.iter().position(|y| y == l).expect("label");
                t[a][b] += 1;
            }
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq)]
pub struct Growth {
    pub matrix: Vec<Vec<u64>>,
    pub rate: f64,
    pub irreducible: bool,
}

pub fn growth_rate(g: &BhGraph) -> Result<Growth, TrackError> {
    if let Err(w) = check_efficient(g)? {
        return Err(TrackError::NotEfficient(w));
    }
    let matrix = transition_matrix(g);
    let rate = spectral_radius(&matrix);
    let irreducible = is_irreducible(&matrix);
    Ok(Growth {
        matrix,
        rate,
        irreducible,
    })
}

/// Power iteration on A + I, which is aperiodic with radius ρ(A) + 1.
pub fn spectral_radius(a: &[Vec<u64>]) -> f64 {
    let size = a.len();
    if size == 0 {
        return 0.0;
    }
    let mut x = vec![1.0_f64; size];
    let mut est = 0.0;
    for _ in 0..1_000_000 {
        let mut y: Vec<f64> = (0..size)
            .map(|i| x[i] + (0..size).map(|j| a[i][j] as f64 * x[j]).sum::<f64>())
            .collect();
        let norm = y.iter().cloned().fold(0.0, f64::max);
        y.iter_mut().for_each(|v| *v /= norm);
        // the norm alone can repeat exactly on early integer iterates
        let moved = x
            .iter()
            .zip(&y)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max);
        est = norm;
        x = y;
        if moved <= 1e-13 {
            break;
        }
    }
    est - 1.0
}

pub fn is_irreducible(a: &[Vec<u64>]) -> bool {
    let size = a.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; size];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..size {
                let edge = if forward { a[i][j] } else { a[j][i] };
                if edge > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    size > 0 && reach(true) && reach(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::rat;
    use crate::starorbit::{
        build_tt_orbit_a, build_tt_orbit_b, enumerate_orbits, enumerate_tt_orbits, horseshoe_data,
        is_train_track, renormalize_phi, side_partition, StarData,
    };

    fn tt() -> StarData {
        let c = [
            lab(0, 0),
            lab(0, 1),
            lab(1, 1),
            lab(2, 1),
            lab(0, 2),
            lab(1, 0),
            lab(2, 0),
        ];
        StarData::from_cycle(1, 3, &c, &[(0, Fold::B), (1, Fold::A), (2, Fold::C)]).unwrap()
    }

    fn simporb() -> StarData {
        horseshoe_data(&"10010".parse().unwrap()).unwrap()
    }

    /// Characteristic polynomial by Faddeev–LeVerrier, exact in integers.
    fn char_poly(a: &[Vec<u64>]) -> Vec<i128> {
        let n = a.len();
        let a: Vec<Vec<i128>> = a
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                        .collect()
                })
                .collect()
        };
        let mut coeffs = vec![1i128];
        let mut mk = vec![vec![0i128; n]; n];
        for k in 1..=n {
            let mut next = mul(&a, &mk);
            for i in 0..n {
                next[i][i] += coeffs[k - 1];
            }
            mk = next;
            let am = mul(&a, &mk);
            let tr: i128 = (0..n).map(|i| am[i][i]).sum();
            assert_eq!(tr % k as i128, 0);
            coeffs.push(-tr / k as i128);
        }
        coeffs
    }

    fn largest_root(c: &[i128]) -> f64 {
        let eval = |x: f64| c.iter().fold(0.0, |acc, &k| acc * x + k as f64);
        let bound = 1.0
            + c.iter()
                .skip(1)
                .map(|&k| (k as f64).abs())
                .fold(0.0, f64::max);
        // scan down from the Cauchy bound for the last sign change
        let steps = 200_000;
        let mut hi = bound;
        for i in (0..steps).rev() {
            let x = bound * i as f64 / steps as f64;
            if eval(x).signum() != eval(hi).signum() || eval(x) == 0.0 {
                let (mut lo, mut top) = (x, hi);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + top);
                    if eval(mid).signum() == eval(top).signum() {
                        top = mid;
                    } else {
                        lo = mid;
                    }
                }
                return 0.5 * (lo + top);
            }
            hi = x;
        }
        0.0
    }

    #[test]
    fn example_graph() {
        let g = build_bh_graph(&tt()).unwrap();
        assert!(check_absorbed(&g));
        assert_eq!(check_efficient(&g).unwrap(), Ok(()));
        let word = |l| {
            g.main_image(l)
                .iter()
                .map(|x: &Letter| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        assert_eq!(word(lab(0, 0)), "e(0,1) p(0,2) e(0,2) E(1,1)");
        assert_eq!(word(lab(0, 1)), "E(1,0)");
        assert!(has_star_train_track(&build_tt_orbit_a(rat(2, 5), 2).unwrap()).unwrap());
    }

    #[test]
    fn simporb_graph() {
        let g = build_bh_graph(&simporb()).unwrap();
        assert_eq!(g.main_count(), 5);
        let img = g.main_image(lab(1, 0));
        assert_eq!(
            img.iter().filter(|x| matches!(x, Letter::Main(..))).count(),
            2
        );
        assert_eq!(
            g.peripheral_image(lab(0, 1)),
            Letter::Peri(lab(1, 1), false)
        );
    }

    #[test]
    fn swapped_folds_are_caught() {
        // B and A exchanged on the seven-point orbit of slope 1/3 (k = 1 then)
        for d in enumerate_orbits(rat(1, 3), 9) {
            let bh = has_star_train_track(&d).unwrap();
            assert_eq!(bh, is_train_track(&d).unwrap(), "{}", d.to_json());
            if !bh {
                let g = build_bh_graph(&d).unwrap();
                assert!(matches!(check_efficient(&g), Ok(Err(_))));
            }
        }
    }

    #[test]
    fn growth_matches_char_poly() {
        let g = build_bh_graph(&tt()).unwrap();
        let growth = growth_rate(&g).unwrap();
        let exact = largest_root(&char_poly(&growth.matrix));
        assert!(growth.rate > 1.0);
        assert!(
            (growth.rate - exact).abs() <= 1e-10 * exact,
            "{} vs {exact}",
            growth.rate
        );
        let renorb = renormalize_phi(&simporb(), rat(2, 5)).unwrap();
        let bigger = growth_rate(&build_bh_graph(&renorb).unwrap()).unwrap();
        assert!(bigger.rate > 1.0);
        for x in [rat(1, 3), rat(2, 5), rat(3, 7)] {
            for d in enumerate_tt_orbits(x, 14)
                .into_iter()
                .chain([build_tt_orbit_b(rat(3, 7), 2, 1, 3).unwrap()])
            {
                let growth = growth_rate(&build_bh_graph(&d).unwrap()).unwrap();
                let exact = largest_root(&char_poly(&growth.matrix));
                assert!(
                    (growth.rate - exact).abs() <= 1e-10 * exact,
                    "{}: {} vs {exact}",
                    d.to_json(),
                    growth.rate
                );
            }
        }
    }

    #[test]
    fn beta_is_the_efficient_absorbed_side() {
        for x in [rat(1, 3), rat(2, 5), rat(3, 7)] {
            for d in enumerate_orbits(x, 9) {
                if !is_train_track(&d).unwrap() {
                    continue;
                }
                let beta: BTreeSet<Label> = side_partition(&d)
                    .unwrap()
                    .beta
                    .into_iter()
                    .filter(|l| l.s > 0)
                    .collect();
                let free: Vec<Label> = d.labels().filter(|l| l.s > 0).collect();
                let mut absorbed = Vec::new();
                for mask in 0u32..1 << free.len() {
                    let left: BTreeSet<Label> = free
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, l)| *l)
                        .collect();
                    let g = BhGraph::new(&d, &left).unwrap();
                    if check_absorbed(&g) {
                        absorbed.push((left, check_efficient(&g).unwrap().is_ok()));
                    }
                }
                let flipped: BTreeSet<Label> =
                    free.iter().filter(|l| !beta.contains(l)).cloned().collect();
                assert_eq!(absorbed.len(), 2, "{}", d.to_json());
                for (left, efficient) in absorbed {
                    assert!(left == beta || left == flipped);
                    assert_eq!(efficient, left == beta);
                }
            }
        }
    }

    #[test]
    fn permutation_matrix_has_radius_one() {
        let a = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]];
        assert!((spectral_radius(&a) - 1.0).abs() < 1e-12);
        assert!(is_irreducible(&a));
    }
}
