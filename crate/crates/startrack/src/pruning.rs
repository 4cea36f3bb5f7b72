//! Pruning the horseshoe: star tree endomorphisms, the glue and pull-tight
//! moves, Procedures L and R, and Farey navigation from f_{1/2} to f_{m/n}.

use std::fmt;

use thiserror::Error;

use crate::farey::{farey_children, parts, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PruneError {
    #[error("{0} is outside the allowed range")]
    OutOfRange(Rational),
    #[error("image of e{0} has no innermost backtracking at its v-end")]
    NoInnermostBacktracking(usize),
    #[error("image of e{0} does not backtrack over e{1}")]
    NoSuchBacktracking(usize, usize),
    #[error("not in the expected form: {0}")]
    WrongForm(String),
}

/// A letter of an edge path: edge index, forwards (tip to centre) when `true`.
pub type Letter = (usize, bool);

fn out_and_back(s: usize) -> [Letter; 2] {
    [(s, false), (s, true)]
}

/// Endomorphism of a star tree with a cyclic (anticlockwise) order on its edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEndo {
    order: Vec<usize>,
    images: Vec<Vec<Letter>>,
}

impl TreeEndo {
    pub fn new(order: Vec<usize>, images: Vec<Vec<Letter>>) -> Self {
        TreeEndo { order, images }
    }

    pub fn edge_count(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn image(&self, e: usize) -> &[Letter] {
        &self.images[e]
    }

    /// Relabel in cyclic order starting from the edge whose image is longest
    /// among those beginning with the edge itself.
    pub fn normalize(&self) -> TreeEndo {
        let start = (0..self.order.len())
            .filter(|&i| self.images[self.order[i]].first() == Some(&(self.order[i], true)))
            .max_by_key(|&i| (self.images[self.order[i]].len(), std::cmp::Reverse(i)))
            .unwrap_or(0);
        self.rotated(start)
    }

    fn rotated(&self, start: usize) -> TreeEndo {
        let n = self.order.len();
        let mut label = vec![usize::MAX; self.images.len()];
        for i in 0..n {
            label[self.order[(start + i) % n]] = i;
        }
        let images = (0..n)
            .map(|i| {
                self.images[self.order[(start + i) % n]]
                    .iter()
                    .map(|&(e, f)| (label[e], f))
                    .collect()
            })
            .collect();
        TreeEndo {
            order: (0..n).collect(),
            images,
        }
    }
}

impl fmt::Display for TreeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &e in &self.order {
            write!(f, "e{e} ->")?;
            for &(x, fwd) in &self.images[e] {
                write!(f, " {}{x}", if fwd { "e" } else { "E" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// f_{m/n}: e_0 ↦ e_0 ē_1 e_1 … ē_m e_m, e_r ↦ e_{r+m}.
pub fn f_endo(x: Rational) -> Result<TreeEndo, PruneError> {
    if x <= rat(0, 1) || x > rat(1, 2) {
        return Err(PruneError::OutOfRange(x));
    }
    let (m, n) = parts(x);
    let mut images = vec![vec![(0, true)]];
    for j in 1..=m {
        images[0].extend(out_and_back(j));
    }
    for r in 1..n {
        images.push(vec![((r + m) % n, true)]);
    }
    Ok(TreeEndo::new((0..n).collect(), images))
}

/// g_{m/n}: as f_{m/n} except e_{n−1} ↦ e_{m−1} ē_m e_m.
pub fn g_endo(x: Rational) -> Result<TreeEndo, PruneError> {
    if x <= rat(0, 1) || x >= rat(1, 2) {
        return Err(PruneError::OutOfRange(x));
    }
    let (m, n) = parts(x);
    let mut t = f_endo(x)?;
    t.images[n - 1] = vec![(m - 1, true), (m, false), (m, true)];
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// glue e_edge, creating e_new with image e_over
    Glue {
        edge: usize,
        over: usize,
        new: usize,
    },
    PullTight {
        edge: usize,
        over: usize,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Glue { edge, over, new } => write!(f, "glue e{edge} over e{over} -> e{new}"),
            Move::PullTight { edge, over } => write!(f, "pull tight e{edge} over e{over}"),
        }
    }
}

/// Fold the trailing ē_s e_s of f(e_r) into a new edge placed just after e_r.
pub fn glue(t: &TreeEndo, r: usize) -> Result<(TreeEndo, Move), PruneError> {
    let img = &t.images[r];
    let k = img.len();
    if k < 3 || img[k - 2] != (img[k - 1].0, false) || !img[k - 1].1 {
        return Err(PruneError::NoInnermostBacktracking(r));
    }
    let s = img[k - 1].0;
    let new = t.images.len();
    let mut images: Vec<Vec<Letter>> = Vec::with_capacity(new + 1);
    for (e, w) in t.images.iter().enumerate() {
        let w = if e == r { &w[..k - 2] } else { &w[..] };
        let mut out = Vec::with_capacity(w.len());
        for &l in w {
            match l {
                (x, true) if x == r => out.extend([(r, true), (new, false), (new, true)]),
                (x, false) if x == r => out.extend([(new, false), (new, true), (r, false)]),
                _ => out.push(l),
            }
        }
        images.push(out);
    }
    images.push(vec![(s, true)]);
    let mut order = t.order.clone();
    let at = order.iter().position(|&e| e == r).expect("edge in order");
    order.insert(at + 1, new);
    Ok((
        TreeEndo { order, images },
        Move::Glue {
            edge: r,
            over: s,
            new,
        },
    ))
}

/// Delete the innermost ē_j e_j from f(e_r): the first one met from the tip.
pub fn pull_tight(t: &TreeEndo, r: usize, j: usize) -> Result<(TreeEndo, Move), PruneError> {
    let img = &t.images[r];
    let at = img
        .windows(2)
        .position(|w| w == out_and_back(j))
        .ok_or(PruneError::NoSuchBacktracking(r, j))?;
    let mut out = t.clone();
    out.images[r].drain(at..at + 2);
    Ok((out, Move::PullTight { edge: r, over: j }))
}

fn slope_of_f_form(t: &TreeEndo, last_long: bool) -> Result<Rational, PruneError> {
    let t = t.normalize();
    let n = t.edge_count();
    let m = (t.images[0].len().saturating_sub(1)) / 2;
    if n < 2 || m == 0 || 2 * m > n {
        return Err(PruneError::WrongForm(format!(
            "{n} edges, centre image length {}",
            t.images[0].len()
        )));
    }
    let x = rat(m as i64, n as i64);
    let want = if last_long { g_endo(x) } else { f_endo(x) };
    match want {
        Ok(w) if w == t => Ok(x),
        _ => Err(PruneError::WrongForm(t.to_string())),
    }
}

fn glue_chain(
    t: TreeEndo,
    chain: impl Iterator<Item = usize>,
    tighten_below: usize,
    moves: &mut Vec<Move>,
) -> Result<TreeEndo, PruneError> {
    let mut t = t;
    for j in chain {
        let (next, mv) = glue(&t, j)?;
        moves.push(mv);
        t = next;
        if (1..tighten_below).contains(&j) {
            // the traversal of e_j in f(e_0) now detours over the new edge
            let new = t.images.len() - 1;
            let (next, mv) = pull_tight(&t, 0, new)?;
            moves.push(mv);
            t = next;
        }
    }
    Ok(t)
}

/// f_{m/n} ↦ g_{p/q} with p/q the left Farey child: glue e_0, e_{n−m}, e_{n−2m}, … , e_{m−1}.
pub fn procedure_l(t: &TreeEndo) -> Result<(TreeEndo, Vec<Move>), PruneError> {
    let x = slope_of_f_form(t, false)?;
    let (m, n) = parts(x);
    let chain: Vec<usize> = {
        let mut v = vec![0];
        while *v.last().expect("nonempty") != m - 1 {
            let last = *v.last().expect("nonempty");
            v.push((last + n - m) % n);
        }
        v
    };
    let mut moves = Vec::new();
    let out = glue_chain(t.normalize(), chain.into_iter(), m, &mut moves)?;
    Ok((out.normalize(), moves))
}

/// g_{m/n} ↦ g_{u/v} with u/v the right Farey child: glue e_{n−1}, e_{n−m−1}, … , e_m.
pub fn procedure_r(t: &TreeEndo) -> Result<(TreeEndo, Vec<Move>), PruneError> {
    let x = slope_of_f_form(t, true)?;
    let (m, n) = parts(x);
    let chain: Vec<usize> = {
        let mut v = vec![n - 1];
        while *v.last().expect("nonempty") != m {
            let last = *v.last().expect("nonempty");
            v.push((last + n - m) % n);
        }
        v
    };
    let mut moves = Vec::new();
    // e_m is glued last here and its detour in f(e_0) is removed as well
    let out = glue_chain(t.normalize(), chain.into_iter(), m + 1, &mut moves)?;
    Ok((out.normalize(), moves))
}

fn tighten(t: &TreeEndo) -> Result<(TreeEndo, Vec<Move>), PruneError> {
    let x = slope_of_f_form(t, true)?;
    let (m, n) = parts(x);
    let (out, mv) = pull_tight(&t.normalize(), n - 1, m)?;
    Ok((out, vec![mv]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    L,
    R,
    Tight,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::L => "L",
            Stage::R => "R",
            Stage::Tight => "tight",
        })
    }
}

/// One procedure, its resulting map and the moves performed on the
/// normalized input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub stage: Stage,
    /// slope of the resulting g (or f after tightening)
    pub slope: Rational,
    pub moves: Vec<Move>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    /// Apply every move from `start`, normalizing between procedures.
    pub fn replay(&self, start: &TreeEndo) -> Result<TreeEndo, PruneError> {
        let mut t = start.normalize();
        for step in &self.steps {
            for mv in &step.moves {
                t = match *mv {
                    Move::Glue { edge, .. } => glue(&t, edge)?.0,
                    Move::PullTight { edge, over } => pull_tight(&t, edge, over)?.0,
                };
            }
            t = t.normalize();
        }
        Ok(t)
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            let kind = if step.stage == Stage::Tight { "f" } else { "g" };
            writeln!(f, "{} -> {kind}_{}", step.stage, step.slope)?;
            for mv in &step.moves {
                writeln!(f, "  {mv}")?;
            }
        }
        Ok(())
    }
}

/// Farey path from 1/2 down to x, as (stage, child) pairs with stage L or R.
fn farey_path(x: Rational) -> Vec<(Stage, Rational)> {
    let mut path = Vec::new();
    let (mut lo, mut cur, mut hi) = (rat(0, 1), rat(1, 2), rat(1, 1));
    while cur != x {
        let (left, right) = farey_children(cur);
        if x < cur {
            debug_assert_eq!(left, crate::farey::mediant(lo, cur));
            path.push((Stage::L, left));
            hi = cur;
            cur = left;
        } else {
            debug_assert_eq!(right, crate::farey::mediant(cur, hi));
            path.push((Stage::R, right));
            lo = cur;
            cur = right;
        }
    }
    path
}

pub fn construct_from_horseshoe(x: Rational) -> Result<(TreeEndo, RewriteTrace), PruneError> {
    if x <= rat(0, 1) || x > rat(1, 2) {
        return Err(PruneError::OutOfRange(x));
    }
    let mut t = f_endo(rat(1, 2))?;
    let mut trace = RewriteTrace::default();
    let mut is_g = false;
    let mut slope = rat(1, 2);
    for (stage, child) in farey_path(x) {
        if stage == Stage::L && is_g {
            let (next, moves) = tighten(&t)?;
            trace.steps.push(TraceStep {
                stage: Stage::Tight,
                slope,
                moves,
            });
            t = next;
        }
        let (next, moves) = if stage == Stage::L {
            procedure_l(&t)?
        } else {
            procedure_r(&t)?
        };
        trace.steps.push(TraceStep {
            stage,
            slope: child,
            moves,
        });
        t = next;
        is_g = true;
        slope = child;
    }
    if is_g {
        let (next, moves) = tighten(&t)?;
        trace.steps.push(TraceStep {
            stage: Stage::Tight,
            slope,
            moves,
        });
        t = next;
    }
    Ok((t.normalize(), trace))
}

/// Equal up to a relabelling that preserves the cyclic order.
pub fn endo_equivalent(a: &TreeEndo, b: &TreeEndo) -> bool {
    let n = a.edge_count();
    if n != b.edge_count() {
        return false;
    }
    let b = b.rotated(0);
    (0..n).any(|k| a.rotated(k) == b)
}
