//! Binary words, eventually periodic sequences and the unimodal order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("invalid symbol {0:?}: expected 0 or 1")]
    InvalidSymbol(char),
    #[error("empty word")]
    Empty,
    #[error("malformed sequence {0:?}: expected pre(period)")]
    Malformed(String),
    #[error("sequence starts with 0 or 11")]
    StartsWithZeroOrEleven,
    #[error("sequence has finitely many 1s")]
    FinitelyManyOnes,
}

/// A finite word over {0,1}. May be empty when used as a decoration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Result<Self, SymbolicError> {
        if let Some(&s) = symbols.iter().find(|&&s| s > 1) {
            return Err(SymbolicError::InvalidSymbol(char::from(b'0' + s.min(9))));
        }
        Ok(Word(symbols))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Cyclic rotation starting at index `i`.
    pub fn rotate(&self, i: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            v.rotate_left(i % self.0.len());
        }
        Word(v)
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&s| s == 1).count()
    }

    /// The infinite repetition of a nonempty word.
    pub fn repeat(&self) -> EpSeq {
        EpSeq::periodic(self.clone())
    }

    pub fn push(&mut self, s: u8) {
        assert!(s <= 1);
        self.0.push(s);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(SymbolicError::Empty);
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                c => Err(SymbolicError::InvalidSymbol(c)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// An eventually periodic sequence `pre · per per per …` in canonical form:
/// the period is primitive and the preperiod is as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpSeq {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl EpSeq {
    pub fn new(pre: Word, per: Word) -> Result<Self, SymbolicError> {
        if per.is_empty() {
            return Err(SymbolicError::Empty);
        }
        let mut pre = pre.0;
        let mut per = primitive_root(per.0);
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Ok(EpSeq { pre, per })
    }

    pub fn periodic(per: Word) -> Self {
        EpSeq::new(Word::default(), per).expect("periodic word must be nonempty")
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    pub fn at(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    /// `σ^i`.
    pub fn shift(&self, i: usize) -> EpSeq {
        if i <= self.pre.len() {
            return EpSeq {
                pre: self.pre[i..].to_vec(),
                per: self.per.clone(),
            };
        }
        let mut per = self.per.clone();
        per.rotate_left((i - self.pre.len()) % self.per.len());
        EpSeq {
            pre: Vec::new(),
            per,
        }
    }

    /// The sequence `w · self`.
    pub fn prepend(&self, w: &[u8]) -> EpSeq {
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        EpSeq::new(Word(pre), Word(self.per.clone())).expect("nonempty period")
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word((0..len).map(|i| self.at(i)).collect())
    }

    pub fn has_infinitely_many_ones(&self) -> bool {
        self.per.contains(&1)
    }

    /// Canonical position of index `i`: indices with equal tails map together.
    pub(crate) fn canonical_index(&self, i: usize) -> usize {
        if i < self.pre.len() {
            i
        } else {
            self.pre.len() + (i - self.pre.len()) % self.per.len()
        }
    }
}

fn primitive_root(v: Vec<u8>) -> Vec<u8> {
    let n = v.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|i| v[i] == v[i - d]) {
            return v[..d].to_vec();
        }
    }
    v
}

impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.pre {
            write!(f, "{s}")?;
        }
        write!(f, "(")?;
        for s in &self.per {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for EpSeq {
    type Err = SymbolicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SymbolicError::Malformed(s.to_string());
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let pre = if open == 0 {
            Word::default()
        } else {
            s[..open].parse()?
        };
        EpSeq::new(pre, inner.parse()?)
    }
}

/// Kneading order: at the first difference compare 0 < 1, reversed when the
/// common prefix holds an odd number of 1s.
pub fn unimodal_compare(x: &EpSeq, y: &EpSeq) -> Ordering {
    let horizon = x.pre.len().max(y.pre.len()) + x.per.len().lcm(&y.per.len());
    let mut odd = false;
    for i in 0..horizon {
        let (a, b) = (x.at(i), y.at(i));
        if a != b {
            let natural = a.cmp(&b);
            return if odd { natural.reverse() } else { natural };
        }
        odd ^= a == 1;
    }
    Ordering::Equal
}

/// `w̄` strictly exceeds each of its proper shifts.
pub fn is_maximal_code(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let top = w.repeat();
    (1..w.len()).all(|i| unimodal_compare(&top, &w.rotate(i).repeat()) == Ordering::Greater)
}

/// Run-length form `1 0^κ1 1^μ1 0^κ2 1^μ2 …` with the (κ,μ) pairs
/// repeating from `cycle_start` on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    pub kappas: Vec<usize>,
    pub mus: Vec<u8>,
    pub cycle_start: usize,
}

impl BlockForm {
    pub fn cycle_len(&self) -> usize {
        self.kappas.len() - self.cycle_start
    }

    /// The `i`-th pair, 0-based, following the periodic tail.
    pub fn pair(&self, i: usize) -> (usize, u8) {
        let j = if i < self.kappas.len() {
            i
        } else {
            self.cycle_start + (i - self.cycle_start) % self.cycle_len()
        };
        (self.kappas[j], self.mus[j])
    }

    pub fn reassemble(&self) -> EpSeq {
        let emit = |range: std::ops::Range<usize>, out: &mut Vec<u8>| {
            for i in range {
                out.extend(std::iter::repeat_n(0, self.kappas[i]));
                out.extend(std::iter::repeat_n(1, self.mus[i] as usize));
            }
        };
        let mut pre = vec![1];
        emit(0..self.cycle_start, &mut pre);
        let mut per = Vec::new();
        emit(self.cycle_start..self.kappas.len(), &mut per);
        EpSeq::new(Word(pre), Word(per)).expect("cycle contains a 1")
    }
}

pub fn block_decompose(c: &EpSeq) -> Result<BlockForm, SymbolicError> {
    if c.at(0) != 1 || c.at(1) == 1 {
        return Err(SymbolicError::StartsWithZeroOrEleven);
    }
    if !c.has_infinitely_many_ones() {
        return Err(SymbolicError::FinitelyManyOnes);
    }
    let mut seen = std::collections::HashMap::new();
    let (mut kappas, mut mus) = (Vec::new(), Vec::new());
    let mut p = 1;
    loop {
        let key = c.canonical_index(p);
        if let Some(&start) = seen.get(&key) {
            return Ok(BlockForm {
                kappas,
                mus,
                cycle_start: start,
            });
        }
        seen.insert(key, kappas.len());
        let mut kappa = 0;
        while c.at(p + kappa) == 0 {
            kappa += 1;
        }
        let mu = if c.at(p + kappa + 1) == 1 { 2 } else { 1 };
        kappas.push(kappa);
        mus.push(mu);
        p += kappa + mu as usize;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> EpSeq {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Itinerary of x under the full tent map, the realised kneading order.
    fn tent_itinerary(mut x: f64, len: usize) -> Vec<u8> {
        (0..len)
            .map(|_| {
                let s = u8::from(x > 0.5);
                x = if x <= 0.5 { 2.0 * x } else { 2.0 - 2.0 * x };
                s
            })
            .collect()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(unimodal_compare(&seq("(0)"), &seq("(1)")), Ordering::Less);
        assert_eq!(
            unimodal_compare(&seq("(10010)"), &seq("(10011)")),
            Ordering::Less
        );
        assert_eq!(
            unimodal_compare(&seq("(10)"), &seq("(11)")),
            Ordering::Greater
        );
    }

    #[test]
    fn tent_map_orders_itineraries_monotonically() {
        let xs: Vec<f64> = (1..200).map(|i| i as f64 / 200.0 + 0.0013).collect();
        for pair in xs.windows(2) {
            let a = Word(tent_itinerary(pair[0], 12));
            let b = Word(tent_itinerary(pair[1], 12));
            // compare 12-symbol prefixes padded by a common tail
            let sa = EpSeq::new(a, w("0")).unwrap();
            let sb = EpSeq::new(b, w("0")).unwrap();
            assert_ne!(unimodal_compare(&sa, &sb), Ordering::Greater);
        }
    }

    #[test]
    fn canonical_form() {
        assert_eq!(seq("1010(10)"), seq("(10)"));
        assert_eq!(seq("(1010)").to_string(), "(10)");
        assert_eq!(seq("0(110)").to_string(), "(011)");
        assert_eq!(seq("10(011)").to_string(), "10(011)");
    }

    #[test]
    fn maximality() {
        assert!(is_maximal_code(&w("10010")));
        assert!(!is_maximal_code(&w("01001")));
        assert!(is_maximal_code(&w("1001")));
        assert!(is_maximal_code(&w("1")));
        assert!(!is_maximal_code(&w("1010")));
    }

    #[test]
    fn blocks() {
        let b = block_decompose(&seq("(10011011001011010)")).unwrap();
        assert_eq!(&b.kappas[..3], &[2, 1, 2]);
        assert_eq!(&b.mus[..3], &[2, 2, 1]);
        let b = block_decompose(&seq("(10)")).unwrap();
        assert_eq!(
            (b.kappas.clone(), b.mus.clone(), b.cycle_len()),
            (vec![1], vec![1], 1)
        );
        assert_eq!(
            block_decompose(&seq("(0)")),
            Err(SymbolicError::StartsWithZeroOrEleven)
        );
        assert_eq!(
            block_decompose(&seq("1(0)")),
            Err(SymbolicError::FinitelyManyOnes)
        );
        assert_eq!(
            block_decompose(&seq("(110)")),
            Err(SymbolicError::StartsWithZeroOrEleven)
        );
    }

    pub(crate) fn arb_seq(max_pre: usize, max_per: usize) -> impl Strategy<Value = EpSeq> {
        (
            prop::collection::vec(0u8..2, 0..=max_pre),
            prop::collection::vec(0u8..2, 1..=max_per),
        )
            .prop_map(|(pre, per)| EpSeq::new(Word(pre), Word(per)).unwrap())
    }

    proptest! {
        #[test]
        fn order_is_total(x in arb_seq(4, 10), y in arb_seq(4, 10), z in arb_seq(4, 10)) {
            let xy = unimodal_compare(&x, &y);
            prop_assert_eq!(xy, unimodal_compare(&y, &x).reverse());
            prop_assert_eq!(xy == Ordering::Equal, x == y);
            if xy != Ordering::Greater && unimodal_compare(&y, &z) != Ordering::Greater {
                prop_assert_ne!(unimodal_compare(&x, &z), Ordering::Greater);
            }
        }

        #[test]
        fn blocks_reassemble(c in arb_seq(6, 10)) {
            if let Ok(b) = block_decompose(&c) {
                prop_assert_eq!(b.reassemble(), c);
                for i in 0..b.kappas.len() {
                    let (_, mu) = b.pair(i);
                    prop_assert!(mu != 1 || b.pair(i + 1).0 > 0);
                }
            }
        }

        #[test]
        fn maximal_words_dominate_rotations(v in prop::collection::vec(0u8..2, 1..12)) {
            let word = Word(v);
            if is_maximal_code(&word) {
                for i in 1..word.len() {
                    prop_assert_eq!(
                        unimodal_compare(&word.rotate(i).repeat(), &word.repeat()),
                        Ordering::Less
                    );
                }
            }
        }
    }
}
