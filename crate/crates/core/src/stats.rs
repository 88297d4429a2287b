//! Equidistribution statistics and figure data.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::generators::GeneratorSet;
use crate::kvn::kvn_forward;
use crate::point::Point;
use crate::rational::{format_sig, pow2_inv, to_f64, Rational};
use crate::seq::BinaryWord;
use crate::tent::{final_cell_of, final_orbit_capped, region_prefix, Region};
use crate::walsh::WalshIndex;

/// Counts of sample points per level-`t` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub t: usize,
    pub k: usize,
    /// Every word of length `t`, including empty cells.
    pub counts: BTreeMap<BinaryWord, usize>,
    /// `max_w |count(w)/k − 2^{−t}|`.
    pub max_abs_deviation: Rational,
}

/// `(1/k) Σ_{i<k} u_m(Kⁱp)`.
pub fn weyl_sum(gens: &GeneratorSet, m: WalshIndex, p: &Point, k: usize) -> Result<Rational> {
    Ok(weyl_sums(gens, &[m], p, k)?.remove(0))
}

/// Weyl sums for several indices along one orbit segment.
pub fn weyl_sums(
    gens: &GeneratorSet,
    ms: &[WalshIndex],
    p: &Point,
    k: usize,
) -> Result<Vec<Rational>> {
    Ok(weyl_sum_series(gens, ms, p, &[k])?.remove(0))
}

/// Weyl sums at each of the (increasing) checkpoints `ks`, one row per
/// checkpoint, computed along a single orbit.
pub fn weyl_sum_series(
    gens: &GeneratorSet,
    ms: &[WalshIndex],
    p: &Point,
    ks: &[usize],
) -> Result<Vec<Vec<Rational>>> {
    assert!(ks.windows(2).all(|w| w[0] < w[1]), "checkpoints must increase");
    assert!(ks.first().is_some_and(|&k| k >= 1), "k must be positive");
    p.ensure_dim(gens.dim())?;
    p.ensure_in_simplex()?;
    let level = ms.iter().map(|m| m.level()).max().unwrap_or(0);
    let mut sums = vec![0i64; ms.len()];
    let mut rows = Vec::with_capacity(ks.len());
    let last = *ks.last().expect("nonempty");
    let mut q = p.clone();
    let mut next = ks.iter().peekable();
    for i in 0..last {
        let bits: Vec<bool> = region_prefix(&q, level)?
            .into_iter()
            .map(Region::final_bit)
            .collect();
        for (s, m) in sums.iter_mut().zip(ms) {
            *s += if m.pairing(&bits) { -1 } else { 1 };
        }
        if next.peek() == Some(&&(i + 1)) {
            next.next();
            rows.push(
                sums.iter()
                    .map(|&s| Rational::new(BigInt::from(s), BigInt::from(i + 1)))
                    .collect(),
            );
        }
        if i + 1 < last {
            q = kvn_forward(gens, &q)?;
        }
    }
    Ok(rows)
}

pub fn cell_discrepancy(points: &[Point], t: usize) -> Result<DiscrepancyReport> {
    assert!(!points.is_empty(), "empty sample");
    let mut counts: BTreeMap<BinaryWord, usize> = BinaryWord::all(t).map(|w| (w, 0)).collect();
    for p in points {
        *counts.entry(final_cell_of(p, t)?).or_default() += 1;
    }
    let k = points.len();
    let target = pow2_inv(t);
    let kk = BigInt::from(k);
    let max_abs_deviation = counts
        .values()
        .map(|&c| (Rational::new(BigInt::from(c), kk.clone()) - &target).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(DiscrepancyReport {
        t,
        k,
        counts,
        max_abs_deviation,
    })
}

/// Significant digits of the decimal decoration columns.
pub const FLOAT_DIGITS: usize = 12;

/// Orbit CSV: `index,orbit,coord_1..coord_n`, the decimal columns
/// `x_1..x_n`, and `phi_image` when Φ-partners are supplied.
pub fn points_csv(
    n: usize,
    points: &[Point],
    orbits: &[String],
    phi_images: Option<&[Point]>,
) -> String {
    let mut out = String::from("index,orbit");
    for i in 1..=n {
        let _ = write!(out, ",coord_{i}");
    }
    for i in 1..=n {
        let _ = write!(out, ",x_{i}");
    }
    if phi_images.is_some() {
        out.push_str(",phi_image");
    }
    out.push('\n');
    for (idx, (p, orbit)) in points.iter().zip(orbits).enumerate() {
        let _ = write!(out, "{idx},{orbit}");
        for c in p.coords() {
            let _ = write!(out, ",{c}");
        }
        for c in p.coords() {
            let _ = write!(out, ",{}", format_sig(c, FLOAT_DIGITS));
        }
        if let Some(img) = phi_images {
            let _ = write!(out, ",\"{}\"", img[idx]);
        }
        out.push('\n');
    }
    out
}

/// Final orbits of `points` as printed sequences.
pub fn orbit_strings(points: &[Point], cap: usize) -> Result<Vec<String>> {
    points
        .iter()
        .map(|p| Ok(final_orbit_capped(p, cap)?.to_string()))
        .collect()
}

/// Writes [`points_csv`] to `path`, computing final orbits.
pub fn emit_points_csv(
    gens: &GeneratorSet,
    points: &[Point],
    phi_images: Option<&[Point]>,
    path: &Path,
) -> Result<()> {
    let orbits = orbit_strings(points, gens.limits().orbit_states)?;
    write_file(path, &points_csv(gens.dim(), points, &orbits, phi_images))
}

const SVG_SIZE: f64 = 1000.0;
const SVG_MARGIN: f64 = 20.0;

fn svg_xy(x1: f64, x2: f64) -> (f64, f64) {
    let span = SVG_SIZE - 2.0 * SVG_MARGIN;
    (SVG_MARGIN + span * x1, SVG_SIZE - SVG_MARGIN - span * x2)
}

/// Scatter plot of points of the triangle `1 ≥ α₁ ≥ α₂ ≥ 0`.
pub fn scatter_svg(points: &[Point]) -> Result<String> {
    if let Some(p) = points.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionUnsupported {
            supported: 2,
            got: p.dim(),
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {s} {s}\" width=\"{s}\" height=\"{s}\">",
        s = SVG_SIZE
    );
    let corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]
        .iter()
        .map(|&(a, b)| {
            let (x, y) = svg_xy(a, b);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(
        out,
        "<polygon points=\"{corners}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
    );
    out.push_str("<g fill=\"black\">\n");
    for p in points {
        let (x, y) = svg_xy(to_f64(&p.coords()[0]), to_f64(&p.coords()[1]));
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"1.2\"/>");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

pub fn emit_scatter_svg(points: &[Point], path: &Path) -> Result<()> {
    write_file(path, &scatter_svg(points)?)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kvn::enumerate_dyadics;
    use crate::rational::{frac, int};

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    #[test]
    fn weyl_examples() {
        let g1 = GeneratorSet::new(1).unwrap();
        assert_eq!(weyl_sum(&g1, WalshIndex(1), g1.v0(), 2).unwrap(), int(0));
        for m in 1..8 {
            let s = weyl_sum(&g1, WalshIndex(m), &pt("1/3"), 1).unwrap();
            assert!(s == int(1) || s == int(-1));
        }
        let series =
            weyl_sum_series(&g1, &[WalshIndex(1), WalshIndex(3)], g1.v0(), &[2, 4, 8]).unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(
            series[2],
            weyl_sums(&g1, &[WalshIndex(1), WalshIndex(3)], g1.v0(), 8).unwrap()
        );
    }

    #[test]
    fn discrepancy_examples() {
        let g1 = GeneratorSet::new(1).unwrap();
        let r = cell_discrepancy(&enumerate_dyadics(&g1, 2).unwrap(), 1).unwrap();
        assert_eq!(r.max_abs_deviation, int(0));
        assert_eq!(r.counts.values().sum::<usize>(), 2);
        let r = cell_discrepancy(&[pt("1/3")], 3).unwrap();
        assert_eq!(r.max_abs_deviation, frac(7, 8));
        assert_eq!(r.counts.len(), 8);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(points_csv(2, &[], &[], None), "index,orbit,coord_1,coord_2,x_1,x_2\n");
        let csv = points_csv(1, &[pt("1/3")], &["(01)".into()], Some(&[pt("1/4")]));
        assert_eq!(
            csv,
            "index,orbit,coord_1,x_1,phi_image\n0,(01),1/3,0.333333333333,\"1/4\"\n"
        );
    }

    #[test]
    fn svg_layout() {
        let pts = [pt("1/2,1/4"), pt("1,0")];
        let svg = scatter_svg(&pts).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("viewBox=\"0 0 1000 1000\""));
        assert!(svg.contains("<circle cx=\"980.000\" cy=\"980.000\" r=\"1.2\"/>"));
        assert_eq!(svg, scatter_svg(&pts).unwrap());
        assert!(matches!(
            scatter_svg(&[pt("1/2")]),
            Err(Error::DimensionUnsupported { supported: 2, got: 1 })
        ));
    }
}
