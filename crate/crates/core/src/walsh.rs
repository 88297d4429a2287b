//! T-Walsh functions.
//!
//! For `m = Σ dᵢ 2ⁱ` of bit-length `t`, `u_m(p) = (−1)^{Σ dᵢ aᵢ}` where
//! `a₀ a₁ …` is the final orbit of `p`. Each `u_m` is constant on the open
//! cells of level `t`, which makes integrals exact finite sums.

use std::ops::BitXor;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::generators::GeneratorSet;
use crate::point::Point;
use crate::rational::{frac, pow2_inv, Rational};
use crate::seq::BinaryWord;
use crate::tent::{cell, classify, region_prefix, tent, Region};

/// Index of a Walsh function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalshIndex(pub u64);

impl WalshIndex {
    /// Bit length; `level(0) = 0`.
    pub fn level(self) -> usize {
        (64 - self.0.leading_zeros()) as usize
    }

    pub fn digit(self, i: usize) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn digits(self) -> Vec<bool> {
        (0..self.level()).map(|i| self.digit(i)).collect()
    }

    /// `⟨m, w⟩ mod 2` for a word at least as long as the level.
    pub fn pairing(self, word: &[bool]) -> bool {
        (0..self.level()).filter(|&i| self.digit(i) && word[i]).count() % 2 == 1
    }
}

impl BitXor for WalshIndex {
    type Output = WalshIndex;

    fn bitxor(self, rhs: Self) -> Self {
        WalshIndex(self.0 ^ rhs.0)
    }
}

/// `m ⊕ l`, the group law on indices.
pub fn walsh_index_add(m: WalshIndex, l: WalshIndex) -> WalshIndex {
    m ^ l
}

fn sign(odd: bool) -> i8 {
    if odd {
        -1
    } else {
        1
    }
}

/// `u_m(p)`.
pub fn walsh_eval(gens: &GeneratorSet, m: WalshIndex, p: &Point) -> Result<i8> {
    p.ensure_dim(gens.dim())?;
    let bits: Vec<bool> = region_prefix(p, m.level())?
        .into_iter()
        .map(Region::final_bit)
        .collect();
    Ok(sign(m.pairing(&bits)))
}

/// `r(p) = u₁(p)`: `+1` on `Γ₀ ∖ Γ₁`, `−1` elsewhere.
fn r(p: &Point) -> i8 {
    sign(classify(p).final_bit())
}

/// `r ∘ Tⁱ`, cross-checked against `u_{2ⁱ}`.
pub fn rademacher(gens: &GeneratorSet, i: usize, p: &Point) -> Result<i8> {
    p.ensure_dim(gens.dim())?;
    let mut q = p.clone();
    for _ in 0..i {
        q = tent(&q)?;
    }
    let direct = r(&q);
    debug_assert!(i >= 64 || direct == walsh_eval(gens, WalshIndex(1 << i), p)?);
    Ok(direct)
}

/// `∏ (r ∘ Tⁱ)^{dᵢ}`, iterating `T` on the point itself.
pub fn walsh_product_form(gens: &GeneratorSet, m: WalshIndex, p: &Point) -> Result<i8> {
    p.ensure_dim(gens.dim())?;
    p.ensure_in_simplex()?;
    let mut q = p.clone();
    let mut acc = 1i8;
    for i in 0..m.level() {
        if m.digit(i) {
            acc *= r(&q);
        }
        q = tent(&q)?;
    }
    Ok(acc)
}

/// `∫ u_m u_l dλ` as `2^{−t} Σ_w (−1)^{⟨m,w⟩ + ⟨l,w⟩}` over words of length
/// `t = max(level m, level l)`.
pub fn walsh_inner_product(m: WalshIndex, l: WalshIndex) -> Rational {
    let t = m.level().max(l.level());
    let total: i64 = BinaryWord::all(t)
        .map(|w| i64::from(sign(m.pairing(w.bits()) ^ l.pairing(w.bits()))))
        .sum();
    Rational::from_integer(BigInt::from(total)) * pow2_inv(t)
}

/// Classical Walsh function `w_m` on `[0,1]`: `∏ (r ∘ Dⁱ)^{dᵢ}` with the
/// doubling map `D x = 2x mod 1` and `r(x) = −1` iff `x ≥ 1/2`.
pub fn classical_walsh_eval(m: WalshIndex, x: &Rational) -> i8 {
    let half = frac(1, 2);
    let one = frac(1, 1);
    let mut y = x.clone();
    let mut acc = 1i8;
    for i in 0..m.level() {
        if m.digit(i) && y >= half {
            acc = -acc;
        }
        y = &y + &y;
        if y >= one {
            y -= &one;
        }
    }
    acc
}

/// Values of the level-`t` T-Walsh functions on the level-`t` cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSetTable {
    pub level: usize,
    /// `2^{t−1} .. 2^t − 1`.
    pub indices: Vec<WalshIndex>,
    /// All words of length `t`, in [`BinaryWord::all`] order.
    pub words: Vec<BinaryWord>,
    /// `values[row][col]` is `u_{indices[row]}` on the cell `words[col]`.
    pub values: Vec<Vec<i8>>,
}

impl LevelSetTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m");
        for w in &self.words {
            out.push(',');
            out.push_str(&w.to_string());
        }
        out.push('\n');
        for (m, row) in self.indices.iter().zip(&self.values) {
            out.push_str(&m.0.to_string());
            for v in row {
                out.push_str(if *v > 0 { ",+1" } else { ",-1" });
            }
            out.push('\n');
        }
        out
    }
}

/// Evaluates every level-`t` function at the barycentre of every cell `Γ_w`,
/// `|w| = t`. Barycentres are interior, where final orbits begin with `w`.
pub fn level_set_table(gens: &GeneratorSet, t: usize) -> Result<LevelSetTable> {
    assert!(t >= 1, "level must be positive");
    let words: Vec<BinaryWord> = BinaryWord::all(t).collect();
    let centres = words
        .iter()
        .map(|w| Ok(cell(gens, w)?.barycenter()))
        .collect::<Result<Vec<_>>>()?;
    let indices: Vec<WalshIndex> = ((1u64 << (t - 1))..(1u64 << t)).map(WalshIndex).collect();
    let values = indices
        .iter()
        .map(|&m| centres.iter().map(|c| walsh_eval(gens, m, c)).collect())
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelSetTable {
        level: t,
        indices,
        words,
        values,
    })
}

/// Exact mean of a ±1 table row.
pub fn row_mean(row: &[i8]) -> Rational {
    let s: i64 = row.iter().map(|&v| i64::from(v)).sum();
    if s.is_zero() {
        return Rational::zero();
    }
    Rational::new(BigInt::from(s), BigInt::from(row.len()))
}
