//! The structural matrices of dimension `n` and quantities derived from them.
//!
//! `V` holds the vertices of `Γ` as columns. `A₀`, `A₁` are the integer
//! matrices whose inverses drive the projective Mönkemeyer map; `B_a` is `A_a`
//! with the two unit entries of the last column halved. The conjugates
//! `C_a = V A_a V⁻¹` act projectively (the ψ-maps) and `D_a = V B_a V⁻¹` act
//! affinely (the inverse branches τ_a of the tent map).

use std::env;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{solve, SqMatrix};
use crate::point::Point;
use crate::rational::{frac, Rational};

/// Number of `E_k` / `F_k` matrices precomputed per generator set.
const CELL_MATRIX_CACHE: usize = 32;

/// Iteration caps. None of them is ever reached on valid rational input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Distinct states visited while detecting the cycle of a T-orbit.
    pub orbit_states: usize,
    /// Candidate sequences tested by the symbolic K / K⁻¹ before giving up.
    pub pruning_gap: usize,
    /// Steps of the Mönkemeyer map before reaching `v₀`.
    pub s_orbit_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            orbit_states: 1_000_000,
            pruning_gap: 1_000_000,
            s_orbit_steps: 100_000,
        }
    }
}

impl Limits {
    /// Defaults, with every cap overridden by `KVN_ITER_CAP` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        match env::var("KVN_ITER_CAP").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
            Some(cap) if cap > 0 => Limits::uniform(cap),
            _ => Limits::default(),
        }
    }

    pub fn uniform(cap: usize) -> Self {
        Limits {
            orbit_states: cap,
            pruning_gap: cap,
            s_orbit_steps: cap,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    n: usize,
    pub v: SqMatrix,
    pub v_inv: SqMatrix,
    pub a0: SqMatrix,
    pub a1: SqMatrix,
    pub b0: SqMatrix,
    pub b1: SqMatrix,
    pub c0: SqMatrix,
    pub c1: SqMatrix,
    pub d0: SqMatrix,
    pub d1: SqMatrix,
    c_inv: [SqMatrix; 2],
    d_inv: [SqMatrix; 2],
    vertices: Vec<Point>,
    v_minus_one: Point,
    kvn_cells: Vec<SqMatrix>,
    e_cells: Vec<SqMatrix>,
    limits: Limits,
}

impl GeneratorSet {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limits(n, Limits::default())
    }

    pub fn with_limits(n: usize, limits: Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let size = n + 1;
        // 1-based positional rules.
        let mut v = SqMatrix::zeros(size);
        for i in 1..=size {
            for j in 1..=size {
                if i == size || (j >= 2 && i + j <= n + 2) {
                    v.set(i - 1, j - 1, Rational::one());
                }
            }
        }
        let mut a0 = SqMatrix::zeros(size);
        let mut a1 = SqMatrix::zeros(size);
        a0.set(0, 0, Rational::one());
        a1.set(1, 0, Rational::one());
        for a in [&mut a0, &mut a1] {
            a.set(0, n, Rational::one());
            a.set(1, n, Rational::one());
            for j in 2..=n {
                a.set(j, j - 1, Rational::one());
            }
        }
        let halve_last_column = |a: &SqMatrix| {
            let mut b = a.clone();
            b.set(0, n, frac(1, 2));
            b.set(1, n, frac(1, 2));
            b
        };
        let b0 = halve_last_column(&a0);
        let b1 = halve_last_column(&a1);

        let v_inv = v.inverse()?;
        let conj = |m: &SqMatrix| &(&v * m) * &v_inv;
        let c0 = conj(&a0);
        let c1 = conj(&a1);
        let d0 = conj(&b0);
        let d1 = conj(&b1);
        let c_inv = [c0.inverse()?, c1.inverse()?];
        let d_inv = [d0.inverse()?, d1.inverse()?];
        let vertices = (0..=n).map(|i| Point::vertex(n, i)).collect();

        let v_minus_one = fixed_point_of_affine(&d1)
            .ok_or(Error::Internal("D1 has no unique affine fixed point"))?;

        // E_{k+1} = D₀ E_k D₁⁻¹ and F_{k+1} = C₀ F_k C₁⁻¹.
        let mut kvn_cells = Vec::with_capacity(CELL_MATRIX_CACHE);
        let mut e = &d1 * &d_inv[0];
        let mut e_cells = Vec::with_capacity(CELL_MATRIX_CACHE);
        let mut f = &c1 * &c_inv[0];
        for _ in 0..CELL_MATRIX_CACHE {
            let next_e = &(&d0 * &e) * &d_inv[1];
            let next_f = &(&c0 * &f) * &c_inv[1];
            kvn_cells.push(std::mem::replace(&mut e, next_e));
            e_cells.push(std::mem::replace(&mut f, next_f));
        }

        Ok(GeneratorSet {
            n,
            v,
            v_inv,
            a0,
            a1,
            b0,
            b1,
            c0,
            c1,
            d0,
            d1,
            c_inv,
            d_inv,
            vertices,
            v_minus_one,
            kvn_cells,
            e_cells,
            limits,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn v0(&self) -> &Point {
        &self.vertices[0]
    }

    /// The fixed point `v₋₁` of `τ₁`.
    pub fn v_minus_one(&self) -> &Point {
        &self.v_minus_one
    }

    pub fn d(&self, bit: bool) -> &SqMatrix {
        if bit {
            &self.d1
        } else {
            &self.d0
        }
    }

    pub fn d_inverse(&self, bit: bool) -> &SqMatrix {
        &self.d_inv[usize::from(bit)]
    }

    pub fn c(&self, bit: bool) -> &SqMatrix {
        if bit {
            &self.c1
        } else {
            &self.c0
        }
    }

    pub fn c_inverse(&self, bit: bool) -> &SqMatrix {
        &self.c_inv[usize::from(bit)]
    }

    /// `E_k = D₀ᵏ D₁ D₀⁻¹ D₁⁻ᵏ`, the affine matrix of K on `τ₁ᵏτ₀Γᵒ`.
    pub fn kvn_cell_matrix(&self, k: usize) -> SqMatrix {
        extend_cached(&self.kvn_cells, k, &self.d0, &self.d_inv[1])
    }

    /// `C₀ᵏ C₁ C₀⁻¹ C₁⁻ᵏ`, the projective matrix of E on `ψ₁ᵏψ₀Γᵒ`.
    pub fn e_cell_matrix(&self, k: usize) -> SqMatrix {
        extend_cached(&self.e_cells, k, &self.c0, &self.c_inv[1])
    }

    /// JSON with every matrix as row-major arrays of `"num/den"` strings.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("n".into(), json!(self.n));
        for (name, m) in [
            ("V", &self.v),
            ("A0", &self.a0),
            ("A1", &self.a1),
            ("B0", &self.b0),
            ("B1", &self.b1),
            ("C0", &self.c0),
            ("C1", &self.c1),
            ("D0", &self.d0),
            ("D1", &self.d1),
        ] {
            map.insert(name.into(), json!(m.to_string_rows()));
        }
        map.insert("v_minus_one".into(), json!(self.v_minus_one.to_string()));
        Value::Object(map)
    }
}

pub fn make_generators(n: usize) -> Result<GeneratorSet> {
    GeneratorSet::new(n)
}

/// Recomputes `v₋₁` from `D₁` by exact elimination.
pub fn perron_fixed_point(gens: &GeneratorSet) -> Result<Point> {
    fixed_point_of_affine(&gens.d1).ok_or(Error::Internal("D1 has no unique affine fixed point"))
}

fn extend_cached(cache: &[SqMatrix], k: usize, left: &SqMatrix, right: &SqMatrix) -> SqMatrix {
    if let Some(m) = cache.get(k) {
        return m.clone();
    }
    let mut m = cache.last().expect("cache is never empty").clone();
    for _ in cache.len() - 1..k {
        m = &(left * &m) * right;
    }
    m
}

/// The unique point fixed by an affine matrix `[[M, b], [0, 1]]`, i.e. the
/// solution of `(I − M) x = b`.
pub fn fixed_point_of_affine(m: &SqMatrix) -> Option<Point> {
    let n = m.dim();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { Rational::one() } else { Rational::zero() };
                    id - m.get(i, j)
                })
                .collect()
        })
        .collect();
    let b: Vec<Rational> = (0..n).map(|i| m.get(i, n).clone()).collect();
    if !m.row(n)[..n].iter().all(Zero::is_zero) {
        return None;
    }
    solve(&a, &b).map(Point::new_unchecked)
}
