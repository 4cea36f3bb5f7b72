//! Heights of binary sequences, the words c_q and w_q, and parsing of
//! codes into prefix and decoration.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::farey::{parts, rat, Rational};
use crate::symbolic::{block_decompose, is_maximal_code, EpSeq, SymbolicError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeightError {
    #[error("sequence has finitely many 1s")]
    FinitelyManyOnes,
    #[error("code {0} is not maximal")]
    NotMaximal(Word),
    #[error("code {0} has finite order type (period equals height denominator)")]
    FiniteOrderType(Word),
    #[error("code {code} does not start with the prefix c_q = {prefix}")]
    PrefixMismatch { code: Word, prefix: Word },
    #[error("{0} is outside (0,1/2]")]
    OutOfRange(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightMode {
    Terminated,
    ShortcutHalf,
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightResult {
    pub value: Rational,
    pub mode: HeightMode,
}

/// A star decoration: a word or ∗.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Decoration {
    Star,
    Word(Word),
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoration::Star => write!(f, "*"),
            Decoration::Word(w) if w.is_empty() => write!(f, "(empty)"),
            Decoration::Word(w) => write!(f, "{w}"),
        }
    }
}

impl std::str::FromStr for Decoration {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "*" | "∗" => Ok(Decoration::Star),
            "" | "(empty)" | "-" => Ok(Decoration::Word(Word::default())),
            w => Ok(Decoration::Word(w.parse()?)),
        }
    }
}

/// Left-open, right-closed interval `(lo, hi]`.
#[derive(Debug, Clone, Copy)]
struct HalfOpen {
    lo: Rational,
    hi: Rational,
}

impl HalfOpen {
    fn block(r: usize, kappa_sum: usize) -> Self {
        let (r, k) = (r as i64, kappa_sum as i64);
        HalfOpen {
            lo: rat(r, 2 * r + k),
            hi: rat(r, 2 * r - 1 + k),
        }
    }
}

// Guard for the limit-mode loop; termination is guaranteed long before.
const MAX_BLOCKS: usize = 1 << 20;

pub fn height_of_sequence(c: &EpSeq) -> Result<HeightResult, HeightError> {
    if !c.has_infinitely_many_ones() {
        return Err(HeightError::FinitelyManyOnes);
    }
    let blocks = match block_decompose(c) {
        Ok(b) => b,
        Err(SymbolicError::StartsWithZeroOrEleven) => {
            return Ok(HeightResult {
                value: rat(1, 2),
                mode: HeightMode::ShortcutHalf,
            })
        }
        Err(_) => return Err(HeightError::FinitelyManyOnes),
    };
    let terminated = |value| {
        Ok(HeightResult {
            value,
            mode: HeightMode::Terminated,
        })
    };

    let (cycle_k, cycle_l): (usize, usize) = {
        let len = blocks.cycle_len();
        let k = (0..len)
            .map(|i| blocks.pair(blocks.cycle_start + i).0)
            .sum();
        (k, len)
    };
    let rho = rat(cycle_l as i64, (2 * cycle_l + cycle_k) as i64);
    let check_at = blocks.cycle_start + cycle_l;

    let mut kappa_sum = 0;
    let mut cap: Option<HalfOpen> = None;
    for r in 1..MAX_BLOCKS {
        let (kappa, mu) = blocks.pair(r - 1);
        kappa_sum += kappa;
        let next = HalfOpen::block(r, kappa_sum);
        let cur = match cap {
            None => next,
            Some(c) => {
                let both = HalfOpen {
                    lo: c.lo.max(next.lo),
                    hi: c.hi.min(next.hi),
                };
                if both.lo >= both.hi {
                    // previous block had μ = 2; I_r lies wholly to one side
                    return terminated(if next.hi <= c.lo { c.lo } else { c.hi });
                }
                both
            }
        };
        if mu == 1 {
            return terminated(cur.hi);
        }
        cap = Some(cur);
        if r == check_at && cur.lo <= rho && rho <= cur.hi {
            // per residue of the cycle, later bounds move monotonically toward rho
            return Ok(HeightResult {
                value: rho,
                mode: HeightMode::Limit,
            });
        }
    }
    Ok(HeightResult {
        value: rho,
        mode: HeightMode::Limit,
    })
}

/// q(P): when `c̄` lacks 010 the final symbol is first changed from 1 to 0.
pub fn orbit_height(code: &Word) -> Result<Rational, HeightError> {
    if !is_maximal_code(code) {
        return Err(HeightError::NotMaximal(code.clone()));
    }
    Ok(height_of_sequence(&adjusted(code).repeat())?.value)
}

fn adjusted(code: &Word) -> Word {
    let s = code.symbols();
    let n = s.len();
    let has_010 = (0..n).any(|i| s[i] == 0 && s[(i + 1) % n] == 1 && s[(i + 2) % n] == 0);
    if has_010 || s[n - 1] == 0 {
        return code.clone();
    }
    let mut v = s.to_vec();
    v[n - 1] = 0;
    Word::new(v).expect("binary")
}

fn check_half(q: Rational) -> Result<(usize, usize), HeightError> {
    if q <= rat(0, 1) || q > rat(1, 2) {
        return Err(HeightError::OutOfRange(q));
    }
    Ok(parts(q))
}

/// κ_i from the floor formula, i = 1..=m.
pub fn prefix_kappas(m: usize, n: usize) -> Vec<usize> {
    (1..=m)
        .map(|i| {
            if i == 1 {
                n / m - 1
            } else {
                i * n / m - (i - 1) * n / m - 2
            }
        })
        .collect()
}

fn prefix_by_kappas(m: usize, n: usize) -> Vec<u8> {
    let mut v = vec![1];
    for (i, k) in prefix_kappas(m, n).into_iter().enumerate() {
        if i > 0 {
            v.extend([1, 1]);
        }
        v.extend(std::iter::repeat_n(0, k));
    }
    v.push(1);
    v
}

fn prefix_by_line(m: usize, n: usize) -> Vec<u8> {
    // s_i = 1 iff some integer j has m(i−1) < jn < m(i+1)
    (0..=n)
        .map(|i| {
            let lo = m as i64 * (i as i64 - 1);
            let hi = m as i64 * (i as i64 + 1);
            let j = lo.div_euclid(n as i64) + 1;
            u8::from(j * (n as i64) < hi)
        })
        .collect()
}

/// c_q for q = m/n ∈ (0,1/2], of length n+1.
pub fn prefix_word(q: Rational) -> Result<Word, HeightError> {
    let (m, n) = check_half(q)?;
    let by_kappa = prefix_by_kappas(m, n);
    assert_eq!(
        by_kappa,
        prefix_by_line(m, n),
        "c_q constructions disagree at {q}"
    );
    Ok(Word::new(by_kappa).expect("binary"))
}

/// w_q: c_q without its leading 10 and trailing 01; ∗ for q = 1/2.
pub fn star_decoration(q: Rational) -> Result<Decoration, HeightError> {
    let c = prefix_word(q)?;
    if q == rat(1, 2) {
        return Ok(Decoration::Star);
    }
    Ok(Decoration::Word(c.slice(2, c.len() - 2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCode {
    pub height: Rational,
    pub prefix: Word,
    pub decoration: Decoration,
    pub joints: Vec<u8>,
}

pub fn parse_code(code: &Word) -> Result<ParsedCode, HeightError> {
    let height = orbit_height(code)?;
    let (_, n) = parts(height);
    let big_n = code.len();
    if big_n == n {
        return Err(HeightError::FiniteOrderType(code.clone()));
    }
    let prefix = prefix_word(height)?;
    if big_n < n + 2 || code.symbols()[..=n] != *prefix.symbols() {
        return Err(HeightError::PrefixMismatch {
            code: code.clone(),
            prefix,
        });
    }
    let s = code.symbols();
    let (decoration, joints) = if big_n == n + 2 {
        (Decoration::Star, vec![s[n + 1]])
    } else {
        (
            Decoration::Word(code.slice(n + 2, big_n - 1)),
            vec![s[n + 1], s[big_n - 1]],
        )
    };
    Ok(ParsedCode {
        height,
        prefix,
        decoration,
        joints,
    })
}

/// q_w = min over the shifts of \overline{10w0}; q_∗ = 1/2.
pub fn decoration_qw(w: &Decoration) -> Rational {
    let w = match w {
        Decoration::Star => return rat(1, 2),
        Decoration::Word(w) => w,
    };
    let base = Word::new(
        [1, 0]
            .into_iter()
            .chain(w.symbols().iter().copied())
            .chain([0])
            .collect(),
    )
    .expect("binary")
    .repeat();
    (0..w.len() + 3)
        .map(|i| {
            height_of_sequence(&base.shift(i))
                .expect("contains a 1")
                .value
        })
        .min()
        .expect("nonempty range")
}

fn coprime_numerators(n: usize) -> impl Iterator<Item = usize> {
    (1..n).filter(move |&m| 2 * m < n && m.gcd(&n) == 1)
}

/// Some((u/v, m/n)) iff the code is c_{u/v}□w_{m/n}□, or c_{u/v}□ with
/// m/n = 1/2, where u/v < m/n.
pub fn star_family_check(code: &Word) -> Result<Option<(Rational, Rational)>, HeightError> {
    if !is_maximal_code(code) {
        return Err(HeightError::NotMaximal(code.clone()));
    }
    let s = code.symbols();
    let big_n = s.len();
    for v in 3..big_n.saturating_sub(1) {
        let Some(u) = coprime_numerators(v).find(|&u| prefix_by_kappas(u, v) == s[..=v]) else {
            continue;
        };
        let uv = rat(u as i64, v as i64);
        let n = big_n - v;
        if n == 2 {
            return Ok(Some((uv, rat(1, 2))));
        }
        let w = &s[v + 2..big_n - 1];
        let hit = coprime_numerators(n)
            .map(|m| rat(m as i64, n as i64))
            .filter(|&mn| mn > uv)
            .find(|&mn| prefix_by_kappas(parts(mn).0, n)[2..n - 1] == *w);
        if let Some(mn) = hit {
            return Ok(Some((uv, mn)));
        }
    }
    Ok(None)
}
