//! Exact-arithmetic Kakutani-von Neumann maps on unit simplexes.
//!
//! The crate builds the n-dimensional tent map `T` on
//! `Γ = {1 ≥ α₁ ≥ ⋯ ≥ αₙ ≥ 0}`, codes points by their orbits under `T`, and
//! pushes the 2-adic odometer forward to a piecewise-affine bijection `K` of
//! `Γ`. Around it sit the T-Walsh functions, the Minkowski-type conjugacy
//! `Φ` between rational and dyadic points with the conjugate map `E`, and
//! equidistribution statistics. All arithmetic is exact.

pub mod error;
pub mod generators;
pub mod kvn;
pub mod linalg;
pub mod minkowski;
pub mod point;
pub mod rational;
pub mod seq;
pub mod stats;
pub mod tent;
pub mod walsh;

pub use error::{Error, Result};
pub use generators::{make_generators, perron_fixed_point, GeneratorSet, Limits};
pub use linalg::{apply_affine, apply_projective, HomVector, SqMatrix};
pub use point::Point;
pub use rational::Rational;
pub use seq::{BinaryWord, EventualBinarySeq, StarSeq, StarSymbol};
