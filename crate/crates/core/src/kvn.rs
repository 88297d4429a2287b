//! The Kakutani-von Neumann bijection `K` on `Γ`.
//!
//! `K v₋₁ = v₀`, and on `τ₁ᵏτ₀Γᵒ` (the points whose final orbit starts with
//! `1ᵏ0`) `K` is the affine map of `E_k = D₀ᵏ D₁ D₀⁻¹ D₁⁻ᵏ`. Equivalently, the
//! final orbit of `Kp` is the first final orbit met when counting upwards
//! from the final orbit of `p` with the odometer; [`kvn_forward_symbolic`]
//! and [`kvn_inverse`] use that description.

use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::linalg::apply_affine;
use crate::point::Point;
use crate::seq::EventualBinarySeq;
use crate::tent::{
    final_leading_ones, final_orbit_capped, final_orbit_mismatch, tau_word, tent, upsilon,
};

/// An element of the adding machine `(ℤ₂, +1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AddingMachineState {
    pub seq: EventualBinarySeq,
}

impl AddingMachineState {
    pub fn new(seq: EventualBinarySeq) -> Self {
        AddingMachineState { seq }
    }

    pub fn succ(&self) -> Self {
        AddingMachineState::new(add_one(&self.seq))
    }

    pub fn pred(&self) -> Self {
        AddingMachineState::new(sub_one(&self.seq))
    }
}

pub fn add_one(a: &EventualBinarySeq) -> EventualBinarySeq {
    a.add_one()
}

pub fn sub_one(a: &EventualBinarySeq) -> EventualBinarySeq {
    a.sub_one()
}

/// `K^index p` together with its final orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub index: usize,
    pub point: Point,
    pub final_orbit: EventualBinarySeq,
}

fn check_input(gens: &GeneratorSet, p: &Point) -> Result<()> {
    p.ensure_dim(gens.dim())?;
    p.ensure_in_simplex()
}

/// `K p` through the affine matrices `E_k`.
pub fn kvn_forward(gens: &GeneratorSet, p: &Point) -> Result<Point> {
    check_input(gens, p)?;
    if p == gens.v_minus_one() {
        return Ok(gens.v0().clone());
    }
    let k = final_leading_ones(p, gens.limits().orbit_states)?;
    apply_affine(&gens.kvn_cell_matrix(k), p)
}

/// `T^s p` for increasing `s`, computed on demand.
struct Trajectory {
    points: Vec<Point>,
}

impl Trajectory {
    fn new(p: &Point) -> Self {
        Trajectory {
            points: vec![p.clone()],
        }
    }

    fn get(&mut self, s: usize) -> Result<&Point> {
        while self.points.len() <= s {
            let next = tent(self.points.last().expect("nonempty"))?;
            self.points.push(next);
        }
        Ok(&self.points[s])
    }
}

/// `υ(cand)` given `υ(a) = p`: when `cand` and `a` share the tail after `s`
/// symbols, `υ(cand) = τ_{cand[..s]}(T^s p)`, which avoids the long matrix
/// products of a long period.
fn upsilon_near(
    gens: &GeneratorSet,
    orbit: &mut Trajectory,
    a: &EventualBinarySeq,
    cand: &EventualBinarySeq,
) -> Result<Point> {
    let s = a.preperiod().len().max(cand.preperiod().len());
    if cand.shift(s) == a.shift(s) {
        tau_word(gens, cand.prefix(s).bits(), orbit.get(s)?)
    } else {
        upsilon(gens, cand)
    }
}

/// Walks the odometer from the final orbit of `p` until it hits a final
/// orbit. A candidate that fails at index `i` fails because `Tⁱ` of its
/// point is a boundary point coded 0, which depends only on the bits from `i`
/// on; every candidate sharing those bits is skipped at once.
fn next_final_orbit(gens: &GeneratorSet, p: &Point, up: bool) -> Result<Point> {
    let cap = gens.limits().pruning_gap;
    let states = gens.limits().orbit_states;
    let start = final_orbit_capped(p, states)?;
    let mut orbit = Trajectory::new(p);
    let step = |s: &EventualBinarySeq| if up { s.add_one() } else { s.sub_one() };
    let mut cand = step(&start);
    for _ in 0..cap {
        let q = upsilon_near(gens, &mut orbit, &start, &cand)?;
        match final_orbit_mismatch(&q, &cand, states)? {
            None => return Ok(q),
            Some(i) => {
                // Run the low `i` digits to their last value before carrying.
                let low = vec![up; i];
                cand = step(&cand.shift(i).prepend(&low));
            }
        }
    }
    Err(Error::PruningGapExceeded { cap })
}

/// `K p` through the odometer on final orbits.
pub fn kvn_forward_symbolic(gens: &GeneratorSet, p: &Point) -> Result<Point> {
    check_input(gens, p)?;
    next_final_orbit(gens, p, true)
}

/// `K⁻¹ p`, decrementing final orbits until one is final again.
pub fn kvn_inverse(gens: &GeneratorSet, p: &Point) -> Result<Point> {
    check_input(gens, p)?;
    if p == gens.v0() {
        return Ok(gens.v_minus_one().clone());
    }
    next_final_orbit(gens, p, false)
}

/// `p, Kp, …, K^{count−1}p` without final orbits.
pub fn orbit_points(gens: &GeneratorSet, p: &Point, count: usize) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(count);
    let mut q = p.clone();
    for i in 0..count {
        let next = if i + 1 < count {
            Some(kvn_forward(gens, &q)?)
        } else {
            None
        };
        out.push(q);
        match next {
            Some(n) => q = n,
            None => break,
        }
    }
    Ok(out)
}

pub fn orbit(gens: &GeneratorSet, p: &Point, count: usize) -> Result<Vec<OrbitRecord>> {
    check_input(gens, p)?;
    let states = gens.limits().orbit_states;
    orbit_points(gens, p, count)?
        .into_iter()
        .enumerate()
        .map(|(index, point)| {
            let final_orbit = final_orbit_capped(&point, states)?;
            Ok(OrbitRecord {
                index,
                point,
                final_orbit,
            })
        })
        .collect()
}

/// The first `count` points of the K-orbit of `v₀`: every dyadic point of
/// `Γ` appears exactly once in the full orbit.
pub fn enumerate_dyadics(gens: &GeneratorSet, count: usize) -> Result<Vec<Point>> {
    orbit_points(gens, gens.v0(), count)
}
