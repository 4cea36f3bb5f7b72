//! Rotation intervals: from horseshoe codes by the 0-block algorithm, and
//! from ⋆-orbit data by extremal cycle means on the Markov graph.

use std::fmt;

use thiserror::Error;

use crate::farey::{rat, Rational};
use crate::height::{height_of_sequence, HeightError};
use crate::starorbit::{is_legal, lab, Fold, Label, StarData, StarError};
use crate::symbolic::{is_maximal_code, EpSeq, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("code {0} is not maximal")]
    NotMaximal(Word),
    #[error("blocks give a union with a gap between {0} and {1}")]
    NonIntervalUnion(Rational, Rational),
    #[error("illegal data")]
    IllegalData,
    #[error(transparent)]
    Height(#[from] HeightError),
    #[error(transparent)]
    Star(#[from] StarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RotationInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RotationInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        RotationInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RotationInterval { lo: x, hi: x }
    }

    pub fn is_trivial(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn interior_contains(&self, x: Rational) -> bool {
        self.lo < x && x < self.hi
    }
}

impl fmt::Display for RotationInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

fn word(v: Vec<u8>) -> Word {
    Word::new(v).expect("binary")
}

/// Union over 0-blocks of [ξ_i, η_i], where ξ_i, η_i are heights of the
/// forward and backward readings from the 1 before the block.
pub fn rotation_interval_of_code(code: &Word) -> Result<RotationInterval, RotationError> {
    if code.len() < 2 || !is_maximal_code(code) {
        return Err(RotationError::NotMaximal(code.clone()));
    }
    let s = code.symbols();
    let len = s.len();
    let block_starts: Vec<usize> = (0..len)
        .filter(|&i| s[i] == 0 && s[(i + len - 1) % len] == 1)
        .collect();
    let mut pieces = Vec::new();
    for &start in &block_starts {
        let cyc = code.rotate(start);
        let forward = EpSeq::new(word(vec![1]), cyc.clone()).expect("nonempty period");
        let xi = height_of_sequence(&forward)?.value;
        let mut back: Vec<u8> = cyc.symbols().to_vec();
        back.reverse();
        let backward = if back[1] == 1 {
            // leading 11: read 10 then carry the displaced pair to the end
            let mut per = back[2..].to_vec();
            per.extend([1, 1]);
            EpSeq::new(word(vec![1, 0]), word(per)).expect("nonempty period")
        } else {
            EpSeq::periodic(word(back))
        };
        let eta = height_of_sequence(&backward)?.value;
        if xi <= eta {
            pieces.push((xi, eta));
        }
    }
    pieces.sort();
    let (lo, mut hi) = pieces.first().copied().expect("some block has ξ ≤ η");
    for &(a, b) in &pieces[1..] {
        if a > hi {
            return Err(RotationError::NonIntervalUnion(hi, a));
        }
        hi = hi.max(b);
    }
    Ok(RotationInterval::new(lo, hi))
}

/// Markov graph of the truncated star map on the intervals ⟨r,s⟩ of Γ_n^P.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    pub vertices: Vec<Label>,
    pub succ: Vec<Vec<usize>>,
    pub marked: Vec<bool>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Stop {
    Point(Label),
    Interval(Label),
    Other,
}

impl MarkedGraph {
    pub fn from_data(d: &StarData) -> Result<Self, RotationError> {
        if !is_legal(d) {
            return Err(RotationError::IllegalData);
        }
        let (m, n) = (d.m(), d.n());
        let vertices: Vec<Label> = d.labels().collect();
        let index = |l: Label| vertices.iter().position(|&v| v == l).expect("label");
        let marked = vertices.iter().map(|l| l.r >= n - m).collect();
        let mut succ = vec![Vec::new(); vertices.len()];

        // e_0 ↦ e_0 ē_1 e_1 … ē_m e_m laid out as points and intervals
        let mut path = Vec::new();
        let mut at: Vec<Vec<[usize; 2]>> =
            (0..=m).map(|j| vec![[usize::MAX; 2]; d.count(j)]).collect();
        for t in 0..d.count(0) {
            at[0][t] = [path.len(); 2];
            path.push(Stop::Point(lab(0, t)));
            path.push(Stop::Interval(lab(0, t)));
        }
        path.push(Stop::Other);
        for j in 1..=m {
            for t in (0..d.count(j)).rev() {
                path.push(Stop::Interval(lab(j, t)));
                at[j][t][0] = path.len();
                path.push(Stop::Point(lab(j, t)));
            }
            path.push(Stop::Other);
            for t in 0..d.count(j) {
                at[j][t][1] = path.len();
                path.push(Stop::Point(lab(j, t)));
                path.push(Stop::Interval(lab(j, t)));
            }
            path.push(Stop::Other);
        }
        let place = |s: usize| {
            let l = d.pi(lab(0, s));
            at[l.r][l.s][usize::from(d.fold(s) != Fold::A)]
        };
        for s in 0..d.count(0) {
            let from = place(s);
            let to = if s + 1 < d.count(0) {
                place(s + 1)
            } else {
                path.len()
            };
            let v = index(lab(0, s));
            for stop in &path[from.min(to)..from.max(to)] {
                if let Stop::Interval(l) = stop {
                    succ[v].push(index(*l));
                }
            }
        }
        for r in 1..n {
            let target = (r + m) % n;
            for s in 0..d.count(r) {
                let lo = d.pi(lab(r, s)).s;
                let hi = if s + 1 < d.count(r) {
                    d.pi(lab(r, s + 1)).s
                } else {
                    d.count(target)
                };
                let v = index(lab(r, s));
                succ[v].extend((lo..hi).map(|t| index(lab(target, t))));
            }
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Ok(MarkedGraph {
            vertices,
            succ,
            marked,
        })
    }

    /// Graph with given successor lists; handy for tests and small examples.
    pub fn from_edges(marked: Vec<bool>, succ: Vec<Vec<usize>>) -> Self {
        let vertices = (0..marked.len()).map(|i| lab(0, i)).collect();
        MarkedGraph {
            vertices,
            succ,
            marked,
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        // Kosaraju
        let size = self.succ.len();
        let mut order = Vec::with_capacity(size);
        let mut seen = vec![false; size];
        for root in 0..size {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![(root, 0)];
            while let Some((v, i)) = stack.pop() {
                if i < self.succ[v].len() {
                    stack.push((v, i + 1));
                    let w = self.succ[v][i];
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                }
            }
        }
        let mut pred = vec![Vec::new(); size];
        for (v, list) in self.succ.iter().enumerate() {
            for &w in list {
                pred[w].push(v);
            }
        }
        let mut comp = vec![usize::MAX; size];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[root] = id;
            let mut members = vec![root];
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &w in &pred[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Karp's minimum cycle mean on one component, weights given per vertex.
    fn min_mean(&self, members: &[usize], weight: impl Fn(usize) -> i64) -> Option<Rational> {
        let size = members.len();
        let local = |v: usize| members.binary_search(&v).ok();
        let has_cycle = size > 1 || self.succ[members[0]].contains(&members[0]);
        if !has_cycle {
            return None;
        }
        // table[k][v]: least weight of a k-step walk from members[0] to v
        let mut table = vec![vec![None::<i64>; size]; size + 1];
        table[0][0] = Some(0);
        for k in 0..size {
            for (i, &v) in members.iter().enumerate() {
                let Some(base) = table[k][i] else { continue };
                for &w in &self.succ[v] {
                    if let Some(j) = local(w) {
                        let cand = base + weight(v);
                        if table[k + 1][j].is_none_or(|cur| cand < cur) {
                            table[k + 1][j] = Some(cand);
                        }
                    }
                }
            }
        }
        (0..size)
            .filter_map(|v| {
                let top = table[size][v]?;
                (0..size)
                    .filter_map(|k| table[k][v].map(|x| rat(top - x, (size - k) as i64)))
                    .max()
            })
            .min()
    }

    /// [min, max] of marked-vertex density over all cycles.
    pub fn cycle_ratio_interval(&self) -> Option<RotationInterval> {
        let mut best: Option<(Rational, Rational)> = None;
        for members in self.components() {
            let mark = |v: usize| i64::from(self.marked[v]);
            let Some(lo) = self.min_mean(&members, mark) else {
                continue;
            };
            let hi = -self
                .min_mean(&members, |v| -mark(v))
                .expect("component has a cycle");
            best = Some(match best {
                None => (lo, hi),
                Some((a, b)) => (a.min(lo), b.max(hi)),
            });
        }
        best.map(|(lo, hi)| RotationInterval::new(lo, hi))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph markov {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if self.marked[i] {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!(
                "  v{i} [label=\"<{},{}>\", shape={shape}];\n",
                v.r, v.s
            ));
        }
        for (i, list) in self.succ.iter().enumerate() {
            for j in list {
                out.push_str(&format!("  v{i} -> v{j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn markov_rotation_interval(d: &StarData) -> Result<RotationInterval, RotationError> {
    let g = MarkedGraph::from_data(d)?;
    Ok(g.cycle_ratio_interval()
        .expect("the orbit's own edges carry a cycle"))
}

pub use crate::starorbit::star_rotation_number;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starorbit::{build_tt_orbit_a, build_tt_orbit_b};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn code_intervals() {
        assert_eq!(
            rotation_interval_of_code(&w("10010")).unwrap(),
            RotationInterval::new(rat(1, 3), rat(1, 2))
        );
        assert_eq!(
            rotation_interval_of_code(&w("10010110")).unwrap(),
            RotationInterval::new(rat(1, 3), rat(2, 5))
        );
        let r = rotation_interval_of_code(&w("10")).unwrap();
        assert!(r.is_trivial());
        assert_eq!(r.lo, rat(1, 2));
        assert!(rotation_interval_of_code(&w("01")).is_err());
    }

    #[test]
    fn single_cycle_graph() {
        let g = MarkedGraph::from_edges(
            vec![true, false, false, true, false],
            vec![vec![1], vec![2], vec![3], vec![4], vec![0]],
        );
        assert_eq!(
            g.cycle_ratio_interval(),
            Some(RotationInterval::point(rat(2, 5)))
        );
    }

    #[test]
    fn two_loops() {
        // loops 0→0 (marked) and 0→1→2→0 (one marked of three)
        let g =
            MarkedGraph::from_edges(vec![true, false, false], vec![vec![0, 1], vec![2], vec![0]]);
        assert_eq!(
            g.cycle_ratio_interval(),
            Some(RotationInterval::new(rat(1, 3), rat(1, 1)))
        );
    }

    #[test]
    fn data_intervals() {
        let d = build_tt_orbit_a(rat(2, 5), 2).unwrap();
        assert_eq!(
            markov_rotation_interval(&d).unwrap(),
            RotationInterval::new(rat(1, 3), rat(2, 5))
        );
        let d = build_tt_orbit_b(rat(3, 7), 2, 1, 3).unwrap();
        let r = markov_rotation_interval(&d).unwrap();
        assert_eq!(r.hi, rat(3, 7));
        assert!(r.interior_contains(star_rotation_number(&d).unwrap()));
    }

    #[test]
    fn left_end_is_height() {
        for len in 2..=12 {
            for bits in 0u32..1 << len {
                let code = Word::new(
                    (0..len)
                        .map(|i| (bits >> (len - 1 - i) & 1) as u8)
                        .collect(),
                )
                .unwrap();
                if !is_maximal_code(&code) {
                    continue;
                }
                let r = rotation_interval_of_code(&code).unwrap();
                assert_eq!(r.lo, crate::height::orbit_height(&code).unwrap(), "{code}");
            }
        }
    }
}
