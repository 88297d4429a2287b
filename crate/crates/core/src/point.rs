use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_dyadic, parse_rational, Rational};

/// Affine point `(α₁, …, αₙ)` with exact coordinates.
///
/// Membership in the simplex `Γ = {1 ≥ α₁ ≥ α₂ ≥ ⋯ ≥ αₙ ≥ 0}` is checked by
/// [`Point::new`]; images of matrix actions are built with
/// [`Point::new_unchecked`] and may be checked later with [`Point::in_simplex`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let p = Point { coords };
        if p.coords.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if !p.in_simplex() {
            return Err(Error::NotInSimplex(p.to_string()));
        }
        Ok(p)
    }

    pub fn new_unchecked(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    /// The vertex `v_i` of `Γ` (the `(i+1)`th column of `V`): the origin for
    /// `i = 0`, otherwise `n − i + 1` leading ones followed by zeros.
    pub fn vertex(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let ones = if i == 0 { 0 } else { n + 1 - i };
        Point {
            coords: (0..n)
                .map(|j| if j < ones { Rational::one() } else { Rational::zero() })
                .collect(),
        }
    }

    pub fn origin(n: usize) -> Self {
        Self::vertex(n, 0)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn in_simplex(&self) -> bool {
        let Some(first) = self.coords.first() else {
            return false;
        };
        first <= &Rational::one()
            && self.coords.windows(2).all(|w| w[0] >= w[1])
            && self.coords.last().is_some_and(|x| !x.is_negative())
    }

    pub fn ensure_in_simplex(&self) -> Result<()> {
        if self.in_simplex() {
            Ok(())
        } else {
            Err(Error::NotInSimplex(self.to_string()))
        }
    }

    pub fn ensure_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.dim(),
            });
        }
        Ok(())
    }

    pub fn is_dyadic(&self) -> bool {
        self.coords.iter().all(is_dyadic)
    }

    /// Least common denominator of the coordinates.
    pub fn common_denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Integer numerators over the common denominator.
    pub fn to_lattice(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.common_denominator();
        let nums = self
            .coords
            .iter()
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        (nums, den)
    }

    pub fn from_lattice(nums: &[BigInt], den: &BigInt) -> Self {
        Point {
            coords: nums
                .iter()
                .map(|x| Rational::new(x.clone(), den.clone()))
                .collect(),
        }
    }

    /// Barycentre of a set of points.
    pub fn barycenter(points: &[Point]) -> Point {
        let n = points[0].dim();
        let k = Rational::from_integer(BigInt::from(points.len()));
        Point {
            coords: (0..n)
                .map(|j| points.iter().map(|p| &p.coords[j]).sum::<Rational>() / &k)
                .collect(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Parses comma-separated rationals, e.g. `"3/4,1/4,1/4"`, without checking
/// simplex membership.
impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Err(Error::Parse {
                what: "point",
                input: s.to_string(),
            });
        }
        let coords = t.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Ok(Point { coords })
    }
}
