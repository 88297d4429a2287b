//! The ψ-maps, the projective Mönkemeyer map and the Minkowski-type
//! conjugacy `Φ` between rational and dyadic points.
//!
//! `ψ_a` is the projective action of `C_a`. The Mönkemeyer map undoes one
//! ψ-step; on a rational point its orbit reaches `v₀` after finitely many
//! steps, and the branch word read along the way (followed by `0^∞`) is the
//! final T-orbit of `Φ(q)`. `E = Φ⁻¹ K Φ` acts on `ψ₁ᵏψ₀Γᵒ` as the projective
//! map of `C₀ᵏ C₁ C₀⁻¹ C₁⁻ᵏ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::kvn::{kvn_forward, kvn_inverse};
use crate::linalg::{apply_projective, SqMatrix};
use crate::point::Point;
use crate::rational::{pow2_inv, Rational};
use crate::seq::BinaryWord;
use crate::tent::{cell, final_orbit_capped, upsilon, Cell};
use crate::EventualBinarySeq;

/// One step of the Mönkemeyer map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoenkemeyerStep {
    pub branch: bool,
    pub image: Point,
    /// `β₁ = β₂`: the point lies on both cones and branch 1 was chosen.
    pub boundary: bool,
}

/// A word `a₀ ⋯ a_{t−1}` addressing the cell `ψ_{a₀}⋯ψ_{a_{t−1}}Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PsiWord {
    pub bits: BinaryWord,
}

impl PsiWord {
    pub fn new(bits: BinaryWord) -> Self {
        PsiWord { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// `ψ_{a₀}(⋯ψ_{a_{t−1}}(q))`.
    pub fn apply(&self, gens: &GeneratorSet, q: &Point) -> Result<Point> {
        self.bits
            .bits()
            .iter()
            .rev()
            .try_fold(q.clone(), |acc, &b| psi(gens, b, &acc))
    }
}

impl fmt::Display for PsiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

fn check_input(gens: &GeneratorSet, q: &Point) -> Result<()> {
    q.ensure_dim(gens.dim())?;
    q.ensure_in_simplex()
}

pub fn psi(gens: &GeneratorSet, a: bool, q: &Point) -> Result<Point> {
    check_input(gens, q)?;
    apply_projective(gens.c(a), q)
}

/// Integer matrices for running the Mönkemeyer map on primitive integer
/// homogeneous vectors instead of rationals.
struct IntegerChart {
    v_inv: Vec<Vec<BigInt>>,
    c_inv: [Vec<Vec<BigInt>>; 2],
}

fn integer_rows(m: &SqMatrix) -> Result<Vec<Vec<BigInt>>> {
    if !m.is_integral() {
        return Err(Error::Internal("expected an integer matrix"));
    }
    Ok(m.rows().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect())
}

fn mul(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

impl IntegerChart {
    fn new(gens: &GeneratorSet) -> Result<Self> {
        Ok(IntegerChart {
            v_inv: integer_rows(&gens.v_inv)?,
            c_inv: [
                integer_rows(gens.c_inverse(false))?,
                integer_rows(gens.c_inverse(true))?,
            ],
        })
    }

    /// Branch, boundary flag and the primitive image of a homogeneous vector
    /// with positive last entry.
    fn step(&self, h: &[BigInt]) -> Result<(bool, bool, Vec<BigInt>)> {
        let beta = mul(&self.v_inv, h);
        let (branch, boundary) = match beta[0].cmp(&beta[1]) {
            std::cmp::Ordering::Greater => (false, false),
            std::cmp::Ordering::Less => (true, false),
            std::cmp::Ordering::Equal => (true, true),
        };
        let mut img = mul(&self.c_inv[usize::from(branch)], h);
        let last = img.last().expect("nonempty").clone();
        if !last.is_positive() {
            return Err(Error::DegenerateProjectiveImage);
        }
        let g = img.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_one() {
            for x in &mut img {
                *x /= &g;
            }
        }
        Ok((branch, boundary, img))
    }
}

fn homogeneous(q: &Point) -> Vec<BigInt> {
    let (mut nums, den) = q.to_lattice();
    nums.push(den);
    nums
}

fn dehomogenize(h: &[BigInt]) -> Point {
    let (last, head) = h.split_last().expect("nonempty");
    Point::new_unchecked(
        head.iter()
            .map(|x| Rational::new(x.clone(), last.clone()))
            .collect(),
    )
}

pub fn moenkemeyer_tent(gens: &GeneratorSet, q: &Point) -> Result<MoenkemeyerStep> {
    check_input(gens, q)?;
    let (branch, boundary, img) = IntegerChart::new(gens)?.step(&homogeneous(q))?;
    Ok(MoenkemeyerStep {
        branch,
        image: dehomogenize(&img),
        boundary,
    })
}

/// Branch word of the Mönkemeyer orbit of `q` up to its arrival at `v₀`.
pub fn s_final_orbit(gens: &GeneratorSet, q: &Point) -> Result<BinaryWord> {
    check_input(gens, q)?;
    let chart = IntegerChart::new(gens)?;
    let cap = gens.limits().s_orbit_steps;
    let mut h = homogeneous(q);
    let mut word = Vec::new();
    let at_origin = |h: &[BigInt]| h[..h.len() - 1].iter().all(Zero::is_zero);
    while !at_origin(&h) {
        if word.len() >= cap {
            return Err(Error::IterationCapExceeded { cap });
        }
        let (branch, _, img) = chart.step(&h)?;
        word.push(branch);
        h = img;
    }
    Ok(BinaryWord::new(word))
}

/// `Φ(q)` for rational `q`; always dyadic.
pub fn phi(gens: &GeneratorSet, q: &Point) -> Result<Point> {
    let w = s_final_orbit(gens, q)?;
    upsilon(gens, &EventualBinarySeq::terminating(w.bits()))
}

/// `Φ⁻¹(p)` for dyadic `p`.
pub fn phi_inverse(gens: &GeneratorSet, p: &Point) -> Result<Point> {
    check_input(gens, p)?;
    let a = final_orbit_capped(p, gens.limits().orbit_states)?;
    if !a.is_zeros_tail() {
        return Err(Error::NotDyadic(p.to_string()));
    }
    PsiWord::new(BinaryWord::new(a.preperiod().to_vec())).apply(gens, gens.v0())
}

/// The level-`depth` cell containing `Φ(q)`.
pub fn phi_cell_approx(gens: &GeneratorSet, q: &Point, depth: usize) -> Result<Cell> {
    let w = s_final_orbit(gens, q)?;
    let bits: Vec<bool> = (0..depth).map(|i| w.bits().get(i).copied().unwrap_or(false)).collect();
    cell(gens, &BinaryWord::new(bits))
}

/// `E q` through the projective matrix `C₀ᵏ C₁ C₀⁻¹ C₁⁻ᵏ`.
pub fn e_map(gens: &GeneratorSet, q: &Point) -> Result<Point> {
    let w = s_final_orbit(gens, q)?;
    let k = w.bits().iter().take_while(|&&b| b).count();
    apply_projective(&gens.e_cell_matrix(k), q)
}

/// `E⁻¹ q = Φ⁻¹ K⁻¹ Φ q`, undefined at `v₀`.
pub fn e_inverse(gens: &GeneratorSet, q: &Point) -> Result<Point> {
    check_input(gens, q)?;
    if q == gens.v0() {
        return Err(Error::InverseOfVZero);
    }
    phi_inverse(gens, &kvn_inverse(gens, &phi(gens, q)?)?)
}

/// `Φ⁻¹ K Φ q`, the oracle for [`e_map`].
pub fn e_map_conjugated(gens: &GeneratorSet, q: &Point) -> Result<Point> {
    phi_inverse(gens, &kvn_forward(gens, &phi(gens, q)?)?)
}

/// The first `count` points of the E-orbit of `v₀`.
pub fn enumerate_rationals(gens: &GeneratorSet, count: usize) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(count);
    let mut q = gens.v0().clone();
    for i in 0..count {
        if i > 0 {
            q = e_map(gens, &q)?;
        }
        out.push(q.clone());
    }
    Ok(out)
}

/// Minkowski measure of `ψ_w Γ`.
pub fn minkowski_cell_mass(_gens: &GeneratorSet, w: &PsiWord) -> Rational {
    pow2_inv(w.len())
}
