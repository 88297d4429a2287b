//! Finite binary words and eventually periodic 0/1 sequences.
//!
//! An [`EventualBinarySeq`] is kept in canonical form: the period is primitive
//! and the preperiod is as short as possible, so two sequences are equal as
//! elements of `{0,1}^ℕ` iff they are structurally equal. Read as a 2-adic
//! integer (bit `i` has weight `2^i`) it supports the odometer `±1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord(pub Vec<bool>);

impl BinaryWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BinaryWord(bits)
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// The `len` least significant bits of `value`, least significant first.
    pub fn from_index(value: u64, len: usize) -> Self {
        BinaryWord((0..len).map(|i| (value >> i) & 1 == 1).collect())
    }

    /// All `2^len` words of length `len`, ordered by [`BinaryWord::from_index`].
    pub fn all(len: usize) -> impl Iterator<Item = BinaryWord> {
        (0..1u64 << len).map(move |v| BinaryWord::from_index(v, len))
    }

    pub fn repeat(bit: bool, len: usize) -> Self {
        BinaryWord(vec![bit; len])
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bits(s.trim(), "binary word").map(BinaryWord)
    }
}

fn parse_bits(s: &str, what: &'static str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::Parse {
                what,
                input: s.to_string(),
            }),
        })
        .collect()
}

/// An eventually periodic element of `{0,1}^ℕ`: `preperiod · period^∞`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventualBinarySeq {
    preperiod: Vec<bool>,
    period: Vec<bool>,
}

impl EventualBinarySeq {
    /// Builds and canonicalises. Panics on an empty period.
    pub fn new(preperiod: Vec<bool>, period: Vec<bool>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let (preperiod, period) = canonicalize(preperiod, period);
        EventualBinarySeq { preperiod, period }
    }

    pub fn zeros() -> Self {
        EventualBinarySeq {
            preperiod: Vec::new(),
            period: vec![false],
        }
    }

    pub fn ones() -> Self {
        EventualBinarySeq {
            preperiod: Vec::new(),
            period: vec![true],
        }
    }

    /// `word · 0^∞`.
    pub fn terminating(word: &[bool]) -> Self {
        Self::new(word.to_vec(), vec![false])
    }

    /// The 2-adic integer `value ≥ 0`.
    pub fn from_u64(value: u64) -> Self {
        let bits: Vec<bool> = (0..64 - value.leading_zeros()).map(|i| (value >> i) & 1 == 1).collect();
        Self::terminating(&bits)
    }

    pub fn preperiod(&self) -> &[bool] {
        &self.preperiod
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn bit(&self, i: usize) -> bool {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    pub fn prefix(&self, len: usize) -> BinaryWord {
        BinaryWord((0..len).map(|i| self.bit(i)).collect())
    }

    pub fn is_zeros_tail(&self) -> bool {
        self.period == [false]
    }

    pub fn is_ones_tail(&self) -> bool {
        self.period == [true]
    }

    /// Number of leading ones; `None` for `1^∞`.
    pub fn leading_ones(&self) -> Option<usize> {
        if self.preperiod.is_empty() && self.is_ones_tail() {
            return None;
        }
        (0..).find(|&i| !self.bit(i))
    }

    /// Drops the first `k` symbols.
    pub fn shift(&self, k: usize) -> Self {
        if k <= self.preperiod.len() {
            return EventualBinarySeq {
                preperiod: self.preperiod[k..].to_vec(),
                period: self.period.clone(),
            };
        }
        let r = (k - self.preperiod.len()) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        EventualBinarySeq::new(Vec::new(), period)
    }

    /// `word · self`.
    pub fn prepend(&self, word: &[bool]) -> Self {
        let mut pre = word.to_vec();
        pre.extend_from_slice(&self.preperiod);
        EventualBinarySeq::new(pre, self.period.clone())
    }

    /// 2-adic successor.
    pub fn add_one(&self) -> Self {
        self.step(true)
    }

    /// 2-adic predecessor.
    pub fn sub_one(&self) -> Self {
        self.step(false)
    }

    /// `+1` flips the leading run of ones and the first zero; `-1` is the
    /// same with the roles of 0 and 1 exchanged.
    fn step(&self, up: bool) -> Self {
        // `carry` is the symbol that propagates: 1 for +1, 0 for -1.
        let carry = up;
        let pre_len = self.preperiod.len();
        if let Some(i) = self.preperiod.iter().position(|&b| b != carry) {
            let mut pre = self.preperiod.clone();
            for b in &mut pre[..=i] {
                *b = !*b;
            }
            return EventualBinarySeq::new(pre, self.period.clone());
        }
        match self.period.iter().position(|&b| b != carry) {
            // carry^∞ ± 1 wraps around to (!carry)^∞
            None => EventualBinarySeq::new(Vec::new(), vec![!carry]),
            Some(j) => {
                // carry^(pre+j) · !carry · (rest of the periodic tail)
                let mut pre = vec![!carry; pre_len + j];
                pre.push(carry);
                let mut period = self.period.clone();
                period.rotate_left(j + 1);
                EventualBinarySeq::new(pre, period)
            }
        }
    }
}

fn primitive_root(period: &[bool]) -> Vec<bool> {
    let n = period.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|i| period[i] == period[i - d]) {
            return period[..d].to_vec();
        }
    }
    period.to_vec()
}

fn canonicalize(mut pre: Vec<bool>, period: Vec<bool>) -> (Vec<bool>, Vec<bool>) {
    let mut period = primitive_root(&period);
    while let Some(&last) = pre.last() {
        if last != *period.last().unwrap() {
            break;
        }
        pre.pop();
        period.rotate_right(1);
    }
    (pre, period)
}

impl fmt::Display for EventualBinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}({})",
            BinaryWord(self.preperiod.clone()),
            BinaryWord(self.period.clone())
        )
    }
}

impl fmt::Debug for EventualBinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `"preperiod(period)"`, e.g. `"0010111(0)"`.
impl FromStr for EventualBinarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || Error::Parse {
            what: "eventually periodic sequence",
            input: s.to_string(),
        };
        let open = t.find('(').ok_or_else(err)?;
        let body = t[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let pre = parse_bits(&t[..open], "eventually periodic sequence")?;
        let per = parse_bits(body, "eventually periodic sequence")?;
        if per.is_empty() {
            return Err(err());
        }
        Ok(EventualBinarySeq::new(pre, per))
    }
}

/// Symbol of a star orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StarSymbol {
    Zero,
    One,
    Star,
}

impl StarSymbol {
    pub fn as_char(self) -> char {
        match self {
            StarSymbol::Zero => '0',
            StarSymbol::One => '1',
            StarSymbol::Star => '*',
        }
    }
}

/// An eventually periodic sequence over `{0,1,*}` whose period is star-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StarSeq {
    preperiod: Vec<StarSymbol>,
    period: Vec<bool>,
}

impl StarSeq {
    pub fn new(mut preperiod: Vec<StarSymbol>, period: Vec<bool>) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        let mut period = primitive_root(&period);
        while let Some(&last) = preperiod.last() {
            let want = if *period.last().unwrap() {
                StarSymbol::One
            } else {
                StarSymbol::Zero
            };
            if last != want {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        StarSeq { preperiod, period }
    }

    pub fn preperiod(&self) -> &[StarSymbol] {
        &self.preperiod
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn star_count(&self) -> usize {
        self.preperiod.iter().filter(|&&s| s == StarSymbol::Star).count()
    }

    pub fn star_positions(&self) -> Vec<usize> {
        self.preperiod
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == StarSymbol::Star)
            .map(|(i, _)| i)
            .collect()
    }

    /// Replaces the stars, in order, by `choices`.
    pub fn substitute(&self, choices: &[bool]) -> EventualBinarySeq {
        let mut it = choices.iter();
        let pre = self
            .preperiod
            .iter()
            .map(|s| match s {
                StarSymbol::Zero => false,
                StarSymbol::One => true,
                StarSymbol::Star => *it.next().expect("one choice per star"),
            })
            .collect();
        EventualBinarySeq::new(pre, self.period.clone())
    }

    /// Every star replaced by 1.
    pub fn finalize(&self) -> EventualBinarySeq {
        self.substitute(&vec![true; self.star_count()])
    }
}

impl fmt::Display for StarSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.preperiod {
            write!(f, "{}", s.as_char())?;
        }
        write!(f, "({})", BinaryWord(self.period.clone()))
    }
}

impl fmt::Debug for StarSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for StarSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let err = || Error::Parse {
            what: "star sequence",
            input: s.to_string(),
        };
        let open = t.find('(').ok_or_else(err)?;
        let body = t[open + 1..].strip_suffix(')').ok_or_else(err)?;
        let pre = t[..open]
            .chars()
            .map(|c| match c {
                '0' => Ok(StarSymbol::Zero),
                '1' => Ok(StarSymbol::One),
                '*' => Ok(StarSymbol::Star),
                _ => Err(err()),
            })
            .collect::<Result<Vec<_>>>()?;
        let per = parse_bits(body, "star sequence")?;
        if per.is_empty() {
            return Err(err());
        }
        Ok(StarSeq::new(pre, per))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> EventualBinarySeq {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(seq("0101(01)"), seq("(01)"));
        assert_eq!(seq("1(0101)").to_string(), "(10)");
        assert_eq!(seq("0(0101)").to_string(), "0(01)");
        assert_eq!(seq("0010(0)").to_string(), "001(0)");
        assert_eq!(seq("11(11)"), EventualBinarySeq::ones());
        assert_eq!(seq("(10)").to_string(), "(10)");
        assert_eq!(seq("0(10)").to_string(), "(01)");
    }

    #[test]
    fn add_one_examples() {
        assert_eq!(EventualBinarySeq::ones().add_one(), EventualBinarySeq::zeros());
        assert_eq!(seq("11(0)").add_one(), seq("001(0)"));
        assert_eq!(seq("(01)").add_one(), seq("11(01)"));
        assert_eq!(seq("(10)").add_one(), seq("01(10)"));
    }

    #[test]
    fn sub_one_examples() {
        assert_eq!(EventualBinarySeq::zeros().sub_one(), EventualBinarySeq::ones());
        assert_eq!(seq("001(0)").sub_one(), seq("11(0)"));
        assert_eq!(seq("1(0)").sub_one(), EventualBinarySeq::zeros());
    }

    #[test]
    fn integers_count_up() {
        let mut a = EventualBinarySeq::zeros();
        for v in 0..200u64 {
            assert_eq!(a, EventualBinarySeq::from_u64(v));
            a = a.add_one();
        }
    }

    #[test]
    fn shift_and_prepend() {
        let a = seq("001011(10)");
        assert_eq!(a.shift(2).prepend(&a.prefix(2).0), a);
        assert_eq!(seq("(011)").shift(4).to_string(), "(110)");
        assert_eq!(seq("1101(0)").leading_ones(), Some(2));
        assert_eq!(EventualBinarySeq::ones().leading_ones(), None);
    }

    #[test]
    fn star_sequences() {
        let s: StarSeq = "0010**1(0)".parse().unwrap();
        assert_eq!(s.star_count(), 2);
        assert_eq!(s.finalize().to_string(), "0010111(0)");
        assert_eq!(s.substitute(&[false, true]).to_string(), "0010011(0)");
        assert_eq!(s.to_string(), "0010**1(0)");
        let t: StarSeq = "00****10(0)".parse().unwrap();
        assert_eq!(t.to_string(), "00****1(0)");
    }

    #[test]
    fn parse_errors() {
        assert!("01".parse::<EventualBinarySeq>().is_err());
        assert!("01()".parse::<EventualBinarySeq>().is_err());
        assert!("0x(1)".parse::<EventualBinarySeq>().is_err());
        assert!("0*(1)".parse::<EventualBinarySeq>().is_err());
        assert!("0*(*)".parse::<StarSeq>().is_err());
    }

    fn arb_seq() -> impl Strategy<Value = EventualBinarySeq> {
        (
            prop::collection::vec(any::<bool>(), 0..8),
            prop::collection::vec(any::<bool>(), 1..6),
        )
            .prop_map(|(a, b)| EventualBinarySeq::new(a, b))
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in arb_seq()) {
            prop_assert_eq!(a.add_one().sub_one(), a.clone());
            prop_assert_eq!(a.sub_one().add_one(), a);
        }

        #[test]
        fn canonicalisation_is_idempotent_and_preserves_bits(a in arb_seq()) {
            let again = EventualBinarySeq::new(a.preperiod().to_vec(), a.period().to_vec());
            prop_assert_eq!(&again, &a);
            let doubled: Vec<bool> = a.period().iter().chain(a.period()).copied().collect();
            let mut pre = a.preperiod().to_vec();
            pre.extend_from_slice(a.period());
            let unrolled = EventualBinarySeq::new(pre, doubled);
            prop_assert_eq!(unrolled, a);
        }

        #[test]
        fn add_one_matches_bitwise_carry(a in arb_seq()) {
            // compare the first 40 bits against schoolbook addition
            let b = a.add_one();
            let mut carry = true;
            for i in 0..40 {
                let s = a.bit(i) ^ carry;
                carry = a.bit(i) && carry;
                prop_assert_eq!(b.bit(i), s);
            }
        }
    }
}
