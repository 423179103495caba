//! Independent reference implementations used by the integration tests.

#![allow(dead_code)]

use std::f64::consts::{PI, SQRT_2};

use gapcheck::analysis::Subject;
use gapcheck::corpus::{standard_corpus, RandomSpec};
use gapcheck::graph::Graph;

/// Values of the `1+μ_{n−1}` lower bound computed with 30-digit arithmetic.
pub mod frozen {
    pub const TRIANGLE_C: f64 = 0.095_262_490_344_437_34;
    pub const CYCLE5_C: f64 = 0.026_619_928_907_292_97;
    pub const K4_C: f64 = 0.047_864_513_149_660_55;
    pub const K5_C: f64 = 0.057_890_394_779_917_92;
    pub const PETERSEN_C: f64 = 0.012_839_534_394_759_85;
    pub const CYCLE5_SPECTRAL: f64 = 0.013_756_051_229_614_78;
    pub const CYCLE5_EXPANSION: f64 = 0.016_746_824_526_945_17;
    pub const TRIANGLE_EXPANSION: f64 = 0.066_987_298_107_780_68;
    pub const PETERSEN_EXPANSION: f64 = 0.007_443_033_123_086_742;
    pub const PETERSEN_SPECTRAL: f64 = 0.012_839_534_394_759_85;
}

/// Families, Cayley graphs and 100 random connected graphs, seed 42.
pub fn corpus() -> Vec<Subject> {
    standard_corpus(&RandomSpec::default(), 42).expect("default corpus samples")
}

/// Minimum of `|∂S| / min(vol S, vol S̄)` over every nonempty proper subset,
/// compared as exact fractions. Returns the reduced `(numer, denom)`.
pub fn naive_cheeger(g: &Graph) -> (u64, u64) {
    let n = g.n();
    assert!(n <= 20, "naive enumeration is for small graphs");
    let total = g.volume() as u64;
    let mut best: Option<(u64, u64)> = None;
    for mask in 1u64..(1u64 << n) - 1 {
        let inside = |v: usize| mask >> v & 1 == 1;
        let vol: u64 = (0..n)
            .filter(|&v| inside(v))
            .map(|v| g.degree(v) as u64)
            .sum();
        let boundary = g
            .edges()
            .iter()
            .filter(|&&(u, v)| inside(u) != inside(v))
            .count() as u64;
        let denom = vol.min(total - vol);
        if denom == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((bn, bd)) => (boundary as u128) * (bd as u128) < (bn as u128) * (denom as u128),
        };
        if better {
            best = Some((boundary, denom));
        }
    }
    let (a, b) = best.expect("graph has a cut with positive volume");
    let d = gcd(a, b);
    (a / d, b / d)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

pub fn cycle_spectrum(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n)
        .map(|k| (2.0 * PI * k as f64 / n as f64).cos())
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn complete_spectrum(n: usize) -> Vec<f64> {
    let mut v = vec![-1.0 / (n as f64 - 1.0); n - 1];
    v.push(1.0);
    v
}

pub fn petersen_spectrum() -> Vec<f64> {
    let mut v = vec![-2.0 / 3.0; 4];
    v.extend([1.0 / 3.0; 5]);
    v.push(1.0);
    v
}

/// Solves `2√c / (1 − 2c/g) = h/√2` on `(0, g/2)` by bisection.
pub fn bisect_c(h: f64, gap: f64) -> f64 {
    let target = h / SQRT_2;
    let f = |c: f64| 2.0 * c.sqrt() / (1.0 - 2.0 * c / gap);
    let (mut lo, mut hi) = (0.0, gap / 2.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
