//! Dense exact linear algebra on homogeneous vectors and `(n+1)×(n+1)` matrices.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{int, Rational};

/// Column vector in projective coordinates `(α₁ ⋯ αₙ 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomVector(pub Vec<Rational>);

impl HomVector {
    pub fn from_point(p: &Point) -> Self {
        let mut v = p.coords().to_vec();
        v.push(Rational::one());
        HomVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &Rational {
        self.0.last().expect("homogeneous vector is never empty")
    }

    /// Divides by the last entry and drops it.
    pub fn dehomogenize(&self) -> Result<Point> {
        let w = self.last();
        if w.is_zero() {
            return Err(Error::DegenerateProjectiveImage);
        }
        let k = self.0.len() - 1;
        Ok(Point::new_unchecked(
            self.0[..k].iter().map(|x| x / w).collect(),
        ))
    }
}

/// Square matrix of order `n+1` over the rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SqMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl SqMatrix {
    pub fn zeros(order: usize) -> Self {
        SqMatrix {
            order,
            entries: vec![Rational::zero(); order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "matrix must be square");
        SqMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    /// Number of rows, `n+1`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// The affine dimension `n`.
    pub fn dim(&self) -> usize {
        self.order - 1
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.order + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.order)
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.order).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &HomVector) -> HomVector {
        assert_eq!(v.len(), self.order);
        HomVector(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> SqMatrix {
        let mut acc = SqMatrix::identity(self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// True iff the last row is `(0 ⋯ 0 1)`.
    pub fn is_affine(&self) -> bool {
        let last = self.row(self.order - 1);
        last[..self.order - 1].iter().all(Zero::is_zero) && last[self.order - 1].is_one()
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> Rational {
        let n = self.order;
        let mut a: Vec<Vec<Rational>> = self.rows().map(<[_]>::to_vec).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<SqMatrix> {
        let n = self.order;
        let mut a: Vec<Vec<Rational>> = self.rows().map(<[_]>::to_vec).collect();
        let mut inv: Vec<Vec<Rational>> = SqMatrix::identity(n).rows().map(<[_]>::to_vec).collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &p;
                inv[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let s1 = &f * &a[col][c];
                    a[r][c] -= s1;
                    let s2 = &f * &inv[col][c];
                    inv[r][c] -= s2;
                }
            }
        }
        Ok(SqMatrix::from_rows(inv))
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        self.rows()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Mul for &SqMatrix {
    type Output = SqMatrix;

    fn mul(self, rhs: &SqMatrix) -> SqMatrix {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut out = SqMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_string_rows()).finish()
    }
}

/// Affine action: requires the image to keep last coordinate 1.
pub fn apply_affine(m: &SqMatrix, p: &Point) -> Result<Point> {
    check_dim(m, p)?;
    let img = m.mul_vec(&HomVector::from_point(p));
    if !img.last().is_one() {
        return Err(Error::NotAffine);
    }
    img.dehomogenize()
}

/// Projective action: multiply, divide by the last coordinate, drop it.
pub fn apply_projective(m: &SqMatrix, p: &Point) -> Result<Point> {
    check_dim(m, p)?;
    m.mul_vec(&HomVector::from_point(p)).dehomogenize()
}

fn check_dim(m: &SqMatrix, p: &Point) -> Result<()> {
    if m.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            got: p.dim(),
        });
    }
    Ok(())
}

/// Solves `A x = b` exactly for square `A` (given as rows). `None` if singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let s = &f * &m[col][c];
                m[r][c] -= s;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Nonzero vector spanning the kernel of a rank-`(cols-1)` matrix.
pub fn kernel_vector(rows: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let cols = rows.first()?.len();
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &p;
        }
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let s = &f * &m[r][j];
                m[i][j] -= s;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); cols];
    v[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free].clone();
    }
    Some(v)
}
