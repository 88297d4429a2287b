mod common;

use kvn_core::kvn::{enumerate_dyadics, orbit_points};
use kvn_core::minkowski::enumerate_rationals;
use kvn_core::rational::{frac, pow2_inv};
use kvn_core::stats::{cell_discrepancy, orbit_strings, points_csv, scatter_svg, weyl_sum_series};
use kvn_core::walsh::{walsh_eval, WalshIndex};
use kvn_core::{GeneratorSet, Rational};
use num_traits::Signed;

/// Exact deviations of the dyadic enumeration prefix of length `2^{t+8}` at
/// depth `t`, cross-checked below against a direct count.
const DEVIATIONS: [[(i64, i64); 5]; 3] = [
    [(0, 1), (0, 1), (1, 2048), (1, 4096), (1, 8192)],
    [(1, 64), (1, 64), (5, 512), (3, 512), (13, 4096)],
    [(11, 256), (49, 1024), (73, 2048), (93, 4096), (115, 8192)],
];

#[test]
fn enumeration_discrepancy_table() {
    for n in 1..=3 {
        let g = GeneratorSet::new(n).unwrap();
        for t in 1..=5 {
            let pts = enumerate_dyadics(&g, 1 << (t + 8)).unwrap();
            let rep = cell_discrepancy(&pts, t).unwrap();
            assert_eq!(rep.counts.values().sum::<usize>(), pts.len());
            let (a, b) = DEVIATIONS[n - 1][t - 1];
            assert_eq!(rep.max_abs_deviation, frac(a, b), "n={n} t={t}");

            let target = pow2_inv(t);
            let by_hand = rep
                .counts
                .values()
                .map(|&c| (frac(c as i64, pts.len() as i64) - &target).abs())
                .max()
                .unwrap();
            assert_eq!(by_hand, rep.max_abs_deviation);
        }
    }
    // In dimension 1 the prefix is within a tenth of a cell mass everywhere.
    for t in 1..=5 {
        let (a, b) = DEVIATIONS[0][t - 1];
        assert!(frac(a, b) <= pow2_inv(t) / Rational::from_integer(10.into()));
    }
}

#[test]
fn weyl_sums_match_direct_evaluation() {
    for n in 1..=3 {
        let g = GeneratorSet::new(n).unwrap();
        let ms = [WalshIndex(1), WalshIndex(6), WalshIndex(13)];
        let pts = orbit_points(&g, g.v0(), 512).unwrap();
        let rows = weyl_sum_series(&g, &ms, g.v0(), &[1, 100, 512]).unwrap();
        for (row, &k) in rows.iter().zip(&[1usize, 100, 512]) {
            for (j, m) in ms.iter().enumerate() {
                let s: i64 = pts[..k]
                    .iter()
                    .map(|p| i64::from(walsh_eval(&g, *m, p).unwrap()))
                    .sum();
                assert_eq!(row[j], frac(s, k as i64));
            }
        }
    }
}

/// Weyl sums need not shrink monotonically along doublings of `k`.
#[test]
fn weyl_sums_are_not_monotone() {
    let g = GeneratorSet::new(2).unwrap();
    let rows = weyl_sum_series(&g, &[WalshIndex(2)], g.v0(), &[1 << 12, 1 << 13]).unwrap();
    assert_eq!(rows[0][0], frac(0, 1));
    assert_eq!(rows[1][0], frac(-1, 128));
}

#[test]
fn emission_is_deterministic() {
    let g = GeneratorSet::new(2).unwrap();
    let pts = enumerate_rationals(&g, 300).unwrap();
    let a = scatter_svg(&pts).unwrap();
    assert_eq!(a, scatter_svg(&enumerate_rationals(&g, 300).unwrap()).unwrap());
    assert_eq!(a.matches("<circle").count(), 300);

    let orbits = orbit_strings(&pts, 1_000_000).unwrap();
    let csv = points_csv(2, &pts, &orbits, None);
    assert_eq!(csv, points_csv(2, &pts, &orbits, None));
    assert_eq!(csv.lines().count(), 301);
    let first = csv.lines().nth(1).unwrap();
    assert_eq!(first, "0,(0),0,0,0,0");
    assert!(csv.lines().nth(2).unwrap().starts_with("1,"));
}
