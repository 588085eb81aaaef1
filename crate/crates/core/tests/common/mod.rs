//! Independent test oracles. Nothing here calls the library's cyclotomic or
//! search machinery: spectra are checked with floating-point character sums
//! and tilings by direct counting.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use fuglede_core::{analyze, IntSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FLOAT_TOL: f64 = 1e-6;

/// `|Σ c_j e^{2πi jk/n}| < FLOAT_TOL`.
pub fn float_vanishes(coeffs: &[i64], n: u64, k: i64) -> bool {
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for (j, &c) in coeffs.iter().enumerate() {
        let e = ((j as i128 * k as i128).rem_euclid(n as i128)) as f64 / n as f64;
        re += c as f64 * (TAU * e).cos();
        im += c as f64 * (TAU * e).sin();
    }
    re.hypot(im) < FLOAT_TOL
}

/// Residues `d` of `Z_n` with `Σ_{a ∈ A} e^{2πi a d / n} = 0`.
pub fn float_zero_set(n: u64, a: &[u64]) -> Vec<bool> {
    (0..n)
        .map(|d| {
            let (mut re, mut im) = (0.0f64, 0.0f64);
            for &x in a {
                let e = ((x * d) % n) as f64 / n as f64;
                re += (TAU * e).cos();
                im += (TAU * e).sin();
            }
            re.hypot(im) < FLOAT_TOL
        })
        .collect()
}

pub fn naive_is_tiling_zn(n: u64, a: &[u64], c: &[u64]) -> bool {
    if a.len() * c.len() != n as usize {
        return false;
    }
    let mut hits = vec![0u32; n as usize];
    for &x in a {
        for &y in c {
            hits[((x + y) % n) as usize] += 1;
        }
    }
    hits.iter().all(|&h| h == 1)
}

pub fn naive_is_spectral_pair_zn(n: u64, a: &[u64], lam: &[u64]) -> bool {
    if a.len() != lam.len() {
        return false;
    }
    let zeros = float_zero_set(n, a);
    lam.iter().all(|&x| {
        lam.iter()
            .all(|&y| x == y || zeros[((x + n - y) % n) as usize])
    })
}

/// Calls `f` on every `size`-subset of `0..n` containing 0, in lexicographic
/// order, until it returns true.
fn first_subset_with_zero(n: u64, size: usize, mut f: impl FnMut(&[u64]) -> bool) -> Option<Vec<u64>> {
    fn rec(n: u64, size: usize, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        let start = cur.last().map_or(0, |&x| x + 1);
        for x in start..n {
            if ((n - x) as usize) < size - cur.len() {
                break;
            }
            cur.push(x);
            if rec(n, size, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if size == 0 || size as u64 > n {
        return None;
    }
    let mut cur = vec![0u64];
    rec(n, size, &mut cur, &mut f).then_some(cur)
}

pub fn naive_find_spectrum_zn(n: u64, a: &[u64]) -> Option<Vec<u64>> {
    let zeros = float_zero_set(n, a);
    first_subset_with_zero(n, a.len(), |lam| {
        lam.iter()
            .all(|&x| lam.iter().all(|&y| x == y || zeros[((x + n - y) % n) as usize]))
    })
}

pub fn naive_find_complement_zn(n: u64, a: &[u64]) -> Option<Vec<u64>> {
    if a.is_empty() || n % a.len() as u64 != 0 {
        return None;
    }
    first_subset_with_zero(n, n as usize / a.len(), |c| naive_is_tiling_zn(n, a, c))
}

pub fn mask_elements(n: u64, mask: u64) -> Vec<u64> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Product of integer polynomials given by coefficient vectors.
pub fn convolve(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + q.len() - 1];
    for (i, &x) in p.iter().enumerate() {
        for (j, &y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn prime_factors(mut s: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= s {
        if s % d == 0 {
            out.push(d);
            while s % d == 0 {
                s /= d;
            }
        }
        d += 1;
    }
    if s > 1 {
        out.push(s);
    }
    out
}

/// Sets `A` with `A(x) = ∏ Φ_p(x^m)` for random primes `p` and steps `m`,
/// coefficients in {0, 1}, `max A <= max` and the CM property, distinct.
pub fn random_cm_sets(rng: &mut ChaCha8Rng, count: usize, max: u64) -> Vec<IntSet> {
    const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0u64;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 1_000_000, "generator stalled at {} sets", out.len());
        let factors = rng.gen_range(1..=4);
        let mut poly = vec![1i64];
        for _ in 0..factors {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            let m = rng.gen_range(1..=30u64);
            let mut f = vec![0i64; ((p - 1) * m + 1) as usize];
            for j in 0..p {
                f[(j * m) as usize] = 1;
            }
            poly = convolve(&poly, &f);
        }
        if poly.len() as u64 > max + 1 || poly.iter().any(|&c| c != 0 && c != 1) {
            continue;
        }
        let elems: Vec<u64> = (0..poly.len() as u64).filter(|&i| poly[i as usize] == 1).collect();
        if !seen.insert(elems.clone()) {
            continue;
        }
        let set = IntSet::new(elems).unwrap();
        if analyze(&set).unwrap().has_cm_property() {
            out.push(set);
        }
    }
    out
}
