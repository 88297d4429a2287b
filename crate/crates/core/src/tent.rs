//! The n-dimensional tent map `T`, its inverse branches `τ₀, τ₁`, the coding
//! of points by symbolic / star / final orbits, and the cells `Γ_w`.
//!
//! In the chart with a fixed common denominator `d` both branches of `T` have
//! integer coefficients, so the orbit of a rational point lives on the finite
//! lattice `(1/d)ℤⁿ ∩ Γ` and is eventually periodic. Orbit coding iterates on
//! integer numerators (machine integers when `d` is small enough, big integers
//! otherwise) and detects the cycle with a hash map.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::generators::{fixed_point_of_affine, GeneratorSet};
use crate::linalg::{apply_affine, kernel_vector, SqMatrix};
use crate::point::Point;
use crate::rational::Rational;
use crate::seq::{BinaryWord, EventualBinarySeq, StarSeq, StarSymbol};

/// Position of a point relative to the cover `Γ₀ ∪ Γ₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `α₁ + αₙ < 1`: in `Γ₀ ∖ Γ₁`.
    ZeroOnly,
    /// `α₁ + αₙ > 1`: in `Γ₁ ∖ Γ₀`.
    OneOnly,
    /// `α₁ + αₙ = 1`: in `Γ₀ ∩ Γ₁`.
    Boundary,
}

impl Region {
    /// Final-orbit bit: boundary resolves to 1.
    pub fn final_bit(self) -> bool {
        self != Region::ZeroOnly
    }

    pub fn star_symbol(self) -> StarSymbol {
        match self {
            Region::ZeroOnly => StarSymbol::Zero,
            Region::OneOnly => StarSymbol::One,
            Region::Boundary => StarSymbol::Star,
        }
    }

    /// Whether the symbol `bit` is admissible in this region.
    pub fn admits(self, bit: bool) -> bool {
        match self {
            Region::ZeroOnly => !bit,
            Region::OneOnly => bit,
            Region::Boundary => true,
        }
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Region::ZeroOnly,
            Ordering::Greater => Region::OneOnly,
            Ordering::Equal => Region::Boundary,
        }
    }
}

pub fn classify(p: &Point) -> Region {
    let c = p.coords();
    let s = &c[0] + &c[c.len() - 1];
    Region::from_ordering(s.cmp(&Rational::one()))
}

/// `p ∈ Γᵒ`, i.e. `α₁ < 1`.
pub fn in_gamma_o(p: &Point) -> bool {
    p.coords()[0] < Rational::one()
}

/// The tent map.
pub fn tent(p: &Point) -> Result<Point> {
    p.ensure_in_simplex()?;
    let c = p.coords();
    let n = c.len();
    let last = &c[n - 1];
    let s = &c[0] + last;
    let one = Rational::one();
    let folded = Rational::from_integer(BigInt::from(2)) - &s;
    let first = match s.cmp(&one) {
        Ordering::Less => s,
        Ordering::Greater => folded,
        Ordering::Equal => {
            // both branch formulas agree on α₁ + αₙ = 1
            debug_assert_eq!(s, folded);
            s
        }
    };
    let mut out = Vec::with_capacity(n);
    out.push(first);
    out.extend(c[..n - 1].iter().map(|x| x - last));
    Ok(Point::new_unchecked(out))
}

/// Inverse branch `τ_a`, the affine action of `D_a`.
pub fn tau(gens: &GeneratorSet, bit: bool, p: &Point) -> Result<Point> {
    p.ensure_dim(gens.dim())?;
    apply_affine(gens.d(bit), p)
}

/// `τ_{w₀} ∘ ⋯ ∘ τ_{w_{t−1}} (p)`.
pub fn tau_word(gens: &GeneratorSet, word: &[bool], p: &Point) -> Result<Point> {
    word.iter().rev().try_fold(p.clone(), |q, &b| tau(gens, b, &q))
}

// ---------------------------------------------------------------------------
// Lattice iteration

trait Lattice: Num + Clone + Ord + Hash {}
impl<T: Num + Clone + Ord + Hash> Lattice for T {}

/// One application of `T` on numerators over the fixed denominator `den`.
fn lattice_step<T: Lattice>(x: &mut [T], den: &T) -> Region {
    let n = x.len();
    let last = x[n - 1].clone();
    let s = x[0].clone() + last.clone();
    let region = Region::from_ordering(s.cmp(den));
    for i in (1..n).rev() {
        x[i] = x[i - 1].clone() - last.clone();
    }
    x[0] = match region {
        Region::OneOnly => den.clone() + den.clone() - s,
        _ => s,
    };
    region
}

/// Regions visited along the T-orbit, split at the start of the cycle.
struct Trajectory {
    regions: Vec<Region>,
    cycle_start: usize,
}

fn lattice_trajectory<T: Lattice>(mut x: Vec<T>, den: T, cap: usize) -> Result<Trajectory> {
    let mut seen: HashMap<Vec<T>, usize> = HashMap::new();
    let mut regions = Vec::new();
    loop {
        if let Some(&start) = seen.get(&x) {
            return Ok(Trajectory {
                regions,
                cycle_start: start,
            });
        }
        if seen.len() >= cap {
            return Err(Error::IterationCapExceeded { cap });
        }
        seen.insert(x.clone(), regions.len());
        regions.push(lattice_step(&mut x, &den));
    }
}

fn lattice_prefix<T: Lattice>(mut x: Vec<T>, den: T, len: usize) -> Vec<Region> {
    (0..len).map(|_| lattice_step(&mut x, &den)).collect()
}

/// Counts steps until the orbit first enters `Γ₀ ∖ Γ₁`.
fn lattice_leading_ones<T: Lattice>(mut x: Vec<T>, den: T, cap: usize) -> Result<usize> {
    for k in 0..cap {
        if lattice_step(&mut x, &den) == Region::ZeroOnly {
            return Ok(k);
        }
    }
    Err(Error::IterationCapExceeded { cap })
}

/// Compares the final bits of the orbit with `a` over one preperiod and one
/// period. `Some(Some(i))` reports the last mismatching index, `Some(None)`
/// a proven match; `None` means the bits agree but the trajectory has not
/// closed up yet.
fn lattice_mismatch<T: Lattice>(
    mut x: Vec<T>,
    den: T,
    a: &EventualBinarySeq,
) -> Option<Option<usize>> {
    let pre = a.preperiod().len();
    let end = pre + a.period().len();
    let mut at_cycle = None;
    let mut last_mismatch = None;
    for i in 0..end {
        if i == pre {
            at_cycle = Some(x.clone());
        }
        if lattice_step(&mut x, &den).final_bit() != a.bit(i) {
            last_mismatch = Some(i);
        }
    }
    match last_mismatch {
        Some(i) => Some(Some(i)),
        None => (at_cycle.as_ref() == Some(&x)).then_some(None),
    }
}

/// Numerators as `i128` when `2·den` fits with room to spare.
fn small_lattice(nums: &[BigInt], den: &BigInt) -> Option<(Vec<i128>, i128)> {
    if den.bits() > 120 {
        return None;
    }
    let d = den.to_i128()?;
    let xs = nums.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>()?;
    Some((xs, d))
}

fn trajectory(p: &Point, cap: usize) -> Result<Trajectory> {
    p.ensure_in_simplex()?;
    let (nums, den) = p.to_lattice();
    match small_lattice(&nums, &den) {
        Some((xs, d)) => lattice_trajectory(xs, d, cap),
        None => lattice_trajectory(nums, den, cap),
    }
}

/// Regions of `p, Tp, …, T^{len−1}p`.
pub fn region_prefix(p: &Point, len: usize) -> Result<Vec<Region>> {
    p.ensure_in_simplex()?;
    let (nums, den) = p.to_lattice();
    Ok(match small_lattice(&nums, &den) {
        Some((xs, d)) => lattice_prefix(xs, d, len),
        None => lattice_prefix(nums, den, len),
    })
}

/// Number of leading ones of the final orbit of `p`. Diverges only at `v₋₁`,
/// which callers must rule out first; the cap turns that into an error.
pub fn final_leading_ones(p: &Point, cap: usize) -> Result<usize> {
    p.ensure_in_simplex()?;
    let (nums, den) = p.to_lattice();
    match small_lattice(&nums, &den) {
        Some((xs, d)) => lattice_leading_ones(xs, d, cap),
        None => lattice_leading_ones(nums, den, cap),
    }
}

// ---------------------------------------------------------------------------
// Orbit coding

/// Default cap on the number of distinct states visited by orbit coding.
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

pub fn final_orbit(p: &Point) -> Result<EventualBinarySeq> {
    final_orbit_capped(p, DEFAULT_STATE_CAP)
}

pub fn final_orbit_capped(p: &Point, cap: usize) -> Result<EventualBinarySeq> {
    let tr = trajectory(p, cap)?;
    let bits: Vec<bool> = tr.regions.iter().map(|r| r.final_bit()).collect();
    let (pre, per) = bits.split_at(tr.cycle_start);
    Ok(EventualBinarySeq::new(pre.to_vec(), per.to_vec()))
}

pub fn star_orbit(p: &Point) -> Result<StarSeq> {
    star_orbit_capped(p, DEFAULT_STATE_CAP)
}

pub fn star_orbit_capped(p: &Point, cap: usize) -> Result<StarSeq> {
    let tr = trajectory(p, cap)?;
    let (pre, per) = tr.regions.split_at(tr.cycle_start);
    if per.contains(&Region::Boundary) {
        return Err(Error::Internal("boundary visited inside a periodic cycle"));
    }
    Ok(StarSeq::new(
        pre.iter().map(|r| r.star_symbol()).collect(),
        per.iter().map(|r| r.final_bit()).collect(),
    ))
}

/// Every symbolic orbit of `p`: the star substitutions that are admissible
/// along the actual trajectory.
pub fn symbolic_orbits(p: &Point) -> Result<Vec<EventualBinarySeq>> {
    let tr = trajectory(p, DEFAULT_STATE_CAP)?;
    let stars = star_orbit_capped(p, DEFAULT_STATE_CAP)?;
    let k = stars.star_count();
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0..1u64 << k {
        let choices: Vec<bool> = (0..k).map(|i| (mask >> i) & 1 == 1).collect();
        let cand = stars.substitute(&choices);
        let admissible = tr
            .regions
            .iter()
            .enumerate()
            .all(|(t, r)| r.admits(cand.bit(t)));
        if admissible && !out.contains(&cand) {
            out.push(cand);
        }
    }
    Ok(out)
}

/// The coding map `υ`: the unique point having `a` as a symbolic orbit.
///
/// The periodic tail codes the fixed point of the contraction
/// `τ_{c₀} ∘ ⋯ ∘ τ_{c_{L−1}}`; the preperiod is then applied with `τ`.
pub fn upsilon(gens: &GeneratorSet, a: &EventualBinarySeq) -> Result<Point> {
    if a.is_zeros_tail() {
        return tau_word(gens, a.preperiod(), gens.v0());
    }
    let n = gens.dim();
    let mut m = SqMatrix::identity(n + 1);
    for &b in a.period() {
        m = &m * gens.d(b);
    }
    let fixed = fixed_point_of_affine(&m)
        .ok_or(Error::Internal("periodic word has no unique fixed point"))?;
    tau_word(gens, a.preperiod(), &fixed)
}

/// True iff `a` is the final orbit of `υ(a)`.
pub fn is_final_orbit(gens: &GeneratorSet, a: &EventualBinarySeq) -> Result<bool> {
    let p = upsilon(gens, a)?;
    has_final_orbit(&p, a, gens.limits().orbit_states)
}

/// `final_orbit(p) == a`, usually decided after one period.
pub fn has_final_orbit(p: &Point, a: &EventualBinarySeq, cap: usize) -> Result<bool> {
    Ok(final_orbit_mismatch(p, a, cap)?.is_none())
}

/// `None` if `a` is the final orbit of `p`, otherwise an index at which the
/// two differ. A mismatch at `i` depends on `Tⁱp` and `aᵢ` only.
pub fn final_orbit_mismatch(
    p: &Point,
    a: &EventualBinarySeq,
    cap: usize,
) -> Result<Option<usize>> {
    p.ensure_in_simplex()?;
    let (nums, den) = p.to_lattice();
    let quick = match small_lattice(&nums, &den) {
        Some((xs, d)) => lattice_mismatch(xs, d, a),
        None => lattice_mismatch(nums, den, a),
    };
    match quick {
        Some(v) => Ok(v),
        None => {
            let f = final_orbit_capped(p, cap)?;
            Ok((&f != a).then(|| {
                (0..)
                    .find(|&i| f.bit(i) != a.bit(i))
                    .expect("distinct sequences differ somewhere")
            }))
        }
    }
}

/// First `t` bits of the final orbit: the address of the cell `Γᶠ_w` that
/// contains `p`.
pub fn final_cell_of(p: &Point, t: usize) -> Result<BinaryWord> {
    Ok(BinaryWord(
        region_prefix(p, t)?.into_iter().map(Region::final_bit).collect(),
    ))
}

// ---------------------------------------------------------------------------
// Cells

/// Hyperplane `coeffs · x = rhs` with primitive integer coefficients whose
/// first nonzero entry is positive; `interior` is the side of the opposite
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
    pub interior: Ordering,
}

impl Facet {
    pub fn eval(&self, p: &Point) -> Ordering {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(p.coords())
            .map(|(c, x)| x * Rational::from_integer(c.clone()))
            .sum();
        lhs.cmp(&Rational::from_integer(self.rhs.clone()))
    }

    /// `p` is on the closed half-space containing the cell.
    pub fn admits(&self, p: &Point) -> bool {
        let o = self.eval(p);
        o == Ordering::Equal || o == self.interior
    }

    /// `c₁x₁+⋯+cₙxₙ = r` in the usual notation.
    pub fn equation(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { "-" } else { "+" });
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&a.to_string());
            }
            s.push_str(&format!("x{}", i + 1));
        }
        format!("{s}={}", self.rhs)
    }
}

/// The simplex `Γ_w = τ_{w₀} ⋯ τ_{w_{t−1}} Γ`.
#[derive(Clone, Debug)]
pub struct Cell {
    pub word: BinaryWord,
    /// Homogeneous vertices as columns: `D_{w₀} ⋯ D_{w_{t−1}} V`.
    pub vertex_matrix: SqMatrix,
    /// `facets[i]` is opposite to vertex `i`.
    pub facets: Vec<Facet>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.vertex_matrix.dim()
    }

    pub fn vertices(&self) -> Vec<Point> {
        let n = self.dim();
        (0..=n)
            .map(|j| {
                let col = self.vertex_matrix.column(j);
                Point::new_unchecked(col[..n].to_vec())
            })
            .collect()
    }

    /// Lebesgue measure normalised so that `Γ` has mass 1.
    pub fn measure(&self) -> Rational {
        self.vertex_matrix.det().abs()
    }

    /// Euclidean volume, `|det(vertex differences)| / n!`.
    pub fn volume(&self) -> Rational {
        let n = self.dim();
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        self.measure() / Rational::from_integer(fact)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.facets.iter().all(|f| f.admits(p))
    }

    /// Strictly inside every facet.
    pub fn contains_interior(&self, p: &Point) -> bool {
        self.facets.iter().all(|f| f.eval(p) == f.interior)
    }

    pub fn barycenter(&self) -> Point {
        Point::barycenter(&self.vertices())
    }
}

pub fn cell(gens: &GeneratorSet, word: &BinaryWord) -> Result<Cell> {
    let n = gens.dim();
    let mut m = SqMatrix::identity(n + 1);
    for &b in word.bits() {
        m = &m * gens.d(b);
    }
    let vertex_matrix = &m * &gens.v;
    let homs: Vec<Vec<Rational>> = (0..=n).map(|j| vertex_matrix.column(j)).collect();
    let mut facets = Vec::with_capacity(n + 1);
    for skip in 0..=n {
        let rows: Vec<Vec<Rational>> = homs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, h)| h.clone())
            .collect();
        let k = kernel_vector(&rows).ok_or(Error::Internal("degenerate cell"))?;
        let ints = primitive_integer_vector(&k);
        let coeffs = ints[..n].to_vec();
        let rhs = -ints[n].clone();
        let opposite = Point::new_unchecked(homs[skip][..n].to_vec());
        let mut facet = Facet {
            coeffs,
            rhs,
            interior: Ordering::Equal,
        };
        facet.interior = facet.eval(&opposite);
        if facet.interior == Ordering::Equal {
            return Err(Error::Internal("degenerate cell"));
        }
        facets.push(facet);
    }
    Ok(Cell {
        word: word.clone(),
        vertex_matrix,
        facets,
    })
}

/// Scales a rational vector to coprime integers with positive leading entry.
fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -x.clone();
        }
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn seq(s: &str) -> EventualBinarySeq {
        s.parse().unwrap()
    }

    #[test]
    fn tent_examples() {
        assert_eq!(tent(&pt("3/4")).unwrap(), pt("1/2"));
        assert_eq!(tent(&pt("3/4,1/4")).unwrap(), pt("1,1/2"));
        assert_eq!(tent(&pt("0")).unwrap(), pt("0"));
        assert!(tent(&pt("1/4,3/4")).is_err());
    }

    #[test]
    fn tau_examples() {
        let g1 = GeneratorSet::new(1).unwrap();
        assert_eq!(tau(&g1, false, &pt("1")).unwrap(), pt("1/2"));
        assert_eq!(tau(&g1, true, &pt("0")).unwrap(), pt("1"));
        for n in 1..=4 {
            let g = GeneratorSet::new(n).unwrap();
            assert_eq!(&tau(&g, false, g.v0()).unwrap(), g.v0());
            assert_eq!(&tau(&g, true, g.v_minus_one()).unwrap(), g.v_minus_one());
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&pt("1/2")), Region::Boundary);
        assert_eq!(classify(&pt("3/8,3/8")), Region::ZeroOnly);
        assert_eq!(classify(&pt("1")), Region::OneOnly);
    }

    #[test]
    fn gamma_o_examples() {
        assert!(in_gamma_o(&pt("0,0")));
        assert!(!in_gamma_o(&pt("1,1/2")));
        assert!(in_gamma_o(&pt("2/3")));
    }

    #[test]
    fn final_orbit_examples() {
        assert_eq!(final_orbit(&pt("0,0,0")).unwrap(), EventualBinarySeq::zeros());
        assert_eq!(final_orbit(&pt("1/2")).unwrap(), seq("11(0)"));
        assert_eq!(final_orbit(&pt("3/8,3/8")).unwrap(), seq("0010111(0)"));
        assert_eq!(final_orbit(&pt("1/4")).unwrap(), seq("011(0)"));
        assert_eq!(final_orbit(&pt("2/3")).unwrap(), EventualBinarySeq::ones());
    }

    #[test]
    fn iteration_cap_is_reported() {
        let err = final_orbit_capped(&pt("1/7"), 2).unwrap_err();
        assert!(matches!(err, Error::IterationCapExceeded { cap: 2 }));
    }

    #[test]
    fn star_orbit_examples() {
        assert_eq!(star_orbit(&pt("3/8,3/8")).unwrap().to_string(), "0010**1(0)");
        assert_eq!(star_orbit(&pt("3/4,1/4,1/4")).unwrap().to_string(), "**1***1(0)");
        assert_eq!(star_orbit(&pt("1/2,1/2,0,0")).unwrap().to_string(), "00****1(0)");
    }

    #[test]
    fn symbolic_orbit_examples() {
        let half = symbolic_orbits(&pt("1/2")).unwrap();
        assert_eq!(half.len(), 2);
        assert!(half.contains(&seq("01(0)")));
        assert!(half.contains(&seq("11(0)")));
        assert_eq!(symbolic_orbits(&pt("0,0")).unwrap(), vec![EventualBinarySeq::zeros()]);
        assert_eq!(symbolic_orbits(&pt("1/3")).unwrap().len(), 1);
    }

    #[test]
    fn upsilon_examples() {
        let g1 = GeneratorSet::new(1).unwrap();
        assert_eq!(upsilon(&g1, &EventualBinarySeq::zeros()).unwrap(), pt("0"));
        assert_eq!(upsilon(&g1, &seq("(01)")).unwrap(), pt("2/5"));
        assert_eq!(upsilon(&g1, &seq("11(0)")).unwrap(), pt("1/2"));
        assert_eq!(upsilon(&g1, &EventualBinarySeq::ones()).unwrap(), pt("2/3"));
    }

    #[test]
    fn final_orbit_recognition() {
        let g1 = GeneratorSet::new(1).unwrap();
        assert!(is_final_orbit(&g1, &EventualBinarySeq::zeros()).unwrap());
        assert!(!is_final_orbit(&g1, &seq("001(0)")).unwrap());
        assert!(is_final_orbit(&g1, &seq("011(0)")).unwrap());
    }

    #[test]
    fn cell_examples() {
        let g3 = GeneratorSet::new(3).unwrap();
        let whole = cell(&g3, &BinaryWord::empty()).unwrap();
        assert_eq!(whole.vertices(), g3.vertices());
        assert_eq!(whole.measure(), frac(1, 1));

        let c = cell(&g3, &BinaryWord::repeat(true, 11)).unwrap();
        let eqs: Vec<String> = c.facets.iter().map(Facet::equation).collect();
        assert!(eqs.contains(&"20x1-12x2+16x3=15".to_string()), "{eqs:?}");
        assert_eq!(c.measure(), crate::rational::pow2_inv(11));

        let g1 = GeneratorSet::new(1).unwrap();
        let c10 = cell(&g1, &"10".parse().unwrap()).unwrap();
        let mut vs = c10.vertices();
        vs.sort();
        assert_eq!(vs, vec![pt("3/4"), pt("1")]);
    }

    #[test]
    fn final_cell_examples() {
        assert!(final_cell_of(&pt("1/3,1/5"), 0).unwrap().is_empty());
        assert_eq!(final_cell_of(&pt("1/2"), 2).unwrap().to_string(), "11");
        assert_eq!(final_cell_of(&pt("1/4"), 3).unwrap().to_string(), "011");
    }

    #[test]
    fn big_denominators_take_the_bigint_path() {
        let g2 = GeneratorSet::new(2).unwrap();
        let d = BigInt::one() << 130usize;
        let p = Point::new(vec![
            Rational::new(BigInt::from(3) * &d / 4 + 1, d.clone()),
            Rational::new(BigInt::one(), d.clone()),
        ])
        .unwrap();
        let a = final_orbit(&p).unwrap();
        assert!(a.is_zeros_tail());
        assert_eq!(upsilon(&g2, &a).unwrap(), p);
    }
}
