#![allow(dead_code)]

use kvn_core::rational::frac;
use kvn_core::tent::tau_word;
use kvn_core::{GeneratorSet, Point, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pt(s: &str) -> Point {
    s.parse().unwrap()
}

/// Uniform lattice point of `Γ` with a random denominator `≤ max_den`.
pub fn random_point(rng: &mut ChaCha8Rng, n: usize, max_den: i64) -> Point {
    let d = rng.gen_range(1..=max_den);
    let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=d)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Point::new(v.iter().map(|&x| frac(x, d)).collect()).unwrap()
}

pub fn random_dyadic(rng: &mut ChaCha8Rng, n: usize, max_exp: u32) -> Point {
    let d = 1i64 << rng.gen_range(0..=max_exp);
    let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=d)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Point::new(v.iter().map(|&x| frac(x, d)).collect()).unwrap()
}

/// A point inside a random cell: positive random weights on its vertices.
pub fn random_interior(rng: &mut ChaCha8Rng, vertices: &[Point]) -> Point {
    let weights: Vec<i64> = vertices.iter().map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let n = vertices[0].dim();
    let coords = (0..n)
        .map(|i| {
            vertices
                .iter()
                .zip(&weights)
                .map(|(v, &w)| &v.coords()[i] * frac(w, total))
                .sum::<Rational>()
        })
        .collect();
    Point::new(coords).unwrap()
}

/// Points concentrated on the walls `α₁ + αₙ = 1`, on faces of `Γ`, and on
/// images of vertices under short τ-words.
pub fn boundary_biased_point(rng: &mut ChaCha8Rng, gens: &GeneratorSet, max_den: i64) -> Point {
    let n = gens.dim();
    match rng.gen_range(0..4) {
        0 => {
            // α₁ + αₙ = 1
            let d = 2 * rng.gen_range(1..=max_den / 2);
            let last = rng.gen_range(0..=d / 2);
            let first = d - last;
            let mut mid: Vec<i64> = (0..n.saturating_sub(2))
                .map(|_| rng.gen_range(last..=first))
                .collect();
            mid.sort_unstable_by(|a, b| b.cmp(a));
            let mut v = vec![first];
            v.extend(mid);
            if n > 1 {
                v.push(last);
            } else {
                v = vec![d / 2];
            }
            Point::new(v.iter().map(|&x| frac(x, d)).collect()).unwrap()
        }
        1 => {
            // a face: repeated coordinates, ones or zeros
            let p = random_point(rng, n, max_den);
            let mut c = p.coords().to_vec();
            let i = rng.gen_range(0..n);
            match rng.gen_range(0..3) {
                0 if i + 1 < n => c[i + 1] = c[i].clone(),
                1 => c[i..].iter_mut().for_each(|x| *x = frac(0, 1)),
                _ => c[..=i].iter_mut().for_each(|x| *x = frac(1, 1)),
            }
            Point::new(c).unwrap()
        }
        2 => {
            let len = rng.gen_range(0..=6);
            let word: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
            let v = &gens.vertices()[rng.gen_range(0..=n)];
            tau_word(gens, &word, v).unwrap()
        }
        _ => random_point(rng, n, max_den),
    }
}
