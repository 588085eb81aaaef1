//! Brute-force engines over `Z_n`.
//!
//! Spectra are found as cliques containing 0 in the Cayley graph of `Z_n`
//! whose connection set is the Fourier zero set of `A`. Tiling complements
//! are found by exact-cover backtracking on the smallest uncovered residue.
//! The survey enumerates every subset containing 0 up to translation (and
//! optionally up to multiplication by units) and classifies each class.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::bits::Bits;
use crate::cm::{analyze, CmAnalysis};
use crate::error::{Error, Result};
use crate::verify::ZnSubset;

/// `{k in Z_n \ {0} : A(zeta_n^k) = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierZeroSet {
    pub n: u64,
    pub zeros: Bits,
}

impl FourierZeroSet {
    pub fn elements(&self) -> Vec<u64> {
        self.zeros.iter().map(|k| k as u64).collect()
    }
}

pub fn fourier_zero_set(a: &ZnSubset) -> Result<FourierZeroSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(FourierZeroSet {
        n: a.modulus(),
        zeros: a.vanishing_residues(),
    })
}

/// Clique of `size` vertices containing 0 in the Cayley graph `(Z_n, allowed)`.
/// `allowed` must be symmetric and must not contain 0. Vertices are added in
/// increasing order, so the first clique found is the lexicographically least.
fn cayley_clique(allowed: &Bits, size: usize) -> Option<Vec<usize>> {
    fn extend(allowed: &Bits, size: usize, clique: &mut Vec<usize>, cand: Bits) -> bool {
        if clique.len() == size {
            return true;
        }
        if clique.len() + cand.count() < size {
            return false;
        }
        let mut rest = cand;
        while let Some(v) = rest.first() {
            rest.remove(v);
            if clique.len() + 1 + rest.count() < size {
                return false;
            }
            let next = rest.and(&allowed.rotate(v));
            clique.push(v);
            if extend(allowed, size, clique, next) {
                return true;
            }
            clique.pop();
        }
        false
    }
    if size == 0 {
        return Some(Vec::new());
    }
    let mut clique = vec![0];
    extend(allowed, size, &mut clique, allowed.clone()).then_some(clique)
}

/// A spectrum `Λ ∋ 0` of `a` in `Z_n`, if one exists.
pub fn find_spectrum_zn(a: &ZnSubset) -> Result<Option<ZnSubset>> {
    let zeros = fourier_zero_set(a)?;
    Ok(spectrum_from_zeros(a.modulus(), &zeros.zeros, a.len()))
}

fn spectrum_from_zeros(n: u64, zeros: &Bits, size: usize) -> Option<ZnSubset> {
    cayley_clique(zeros, size)
        .map(|v| ZnSubset::from_bits(n, Bits::from_indices(n as usize, v)))
}

/// A set `C` with `a ⊕ C = Z_n` for every member `a` of the family.
fn common_complement(n: u64, family: &[Bits]) -> Option<Bits> {
    fn extend(n: usize, family: &[Bits], covered: &mut [Bits], chosen: &mut Vec<usize>) -> bool {
        let Some(r) = covered[0].first_absent() else {
            return true;
        };
        let mut cands: Vec<usize> = family[0].iter().map(|a| (r + n - a) % n).collect();
        cands.sort_unstable();
        cands.dedup();
        for c in cands {
            let shifted: Vec<Bits> = family.iter().map(|a| a.rotate(c)).collect();
            if shifted.iter().zip(covered.iter()).any(|(s, cov)| !s.is_disjoint(cov)) {
                continue;
            }
            let saved: Vec<Bits> = covered.to_vec();
            for (cov, s) in covered.iter_mut().zip(&shifted) {
                *cov = cov.or(s);
            }
            chosen.push(c);
            if extend(n, family, covered, chosen) {
                return true;
            }
            chosen.pop();
            covered.clone_from_slice(&saved);
        }
        false
    }
    let n = n as usize;
    let k = family[0].count();
    if k == 0 || n % k != 0 {
        return None;
    }
    let mut covered: Vec<Bits> = family.iter().map(|_| Bits::empty(n)).collect();
    let mut chosen = Vec::new();
    extend(n, family, &mut covered, &mut chosen).then(|| Bits::from_indices(n, chosen))
}

/// A complement `C` with `a ⊕ C = Z_n`, if one exists.
pub fn find_tiling_complement_zn(a: &ZnSubset) -> Result<Option<ZnSubset>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = a.modulus();
    Ok(common_complement(n, std::slice::from_ref(a.bits())).map(|b| ZnSubset::from_bits(n, b)))
}

fn check_family(family: &[ZnSubset]) -> Result<(u64, usize)> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let (n, k) = (first.modulus(), first.len());
    if k == 0 {
        return Err(Error::EmptySet);
    }
    for a in &family[1..] {
        if a.modulus() != n {
            return Err(Error::ModulusMismatch(n, a.modulus()));
        }
        if a.len() != k {
            return Err(Error::CardinalityMismatch { expected: k, found: a.len() });
        }
    }
    Ok((n, k))
}

/// One `Λ` that is a spectrum of every member of the family.
pub fn common_spectrum(family: &[ZnSubset]) -> Result<Option<ZnSubset>> {
    let (n, k) = check_family(family)?;
    let mut zeros = Bits::full(n as usize);
    zeros.remove(0);
    for a in family {
        zeros = zeros.and(&a.vanishing_residues());
    }
    Ok(spectrum_from_zeros(n, &zeros, k))
}

/// One `C` that tiles `Z_n` with every member of the family.
pub fn common_tiling_set(family: &[ZnSubset]) -> Result<Option<ZnSubset>> {
    let (n, _) = check_family(family)?;
    let bits: Vec<Bits> = family.iter().map(|a| a.bits().clone()).collect();
    Ok(common_complement(n, &bits).map(|b| ZnSubset::from_bits(n, b)))
}

/// Environment override for the survey ceiling.
pub const CEILING_ENV: &str = "FUGLEDE_SURVEY_CEILING";
pub const DEFAULT_CEILING: u64 = 24;
/// Masks are single machine words with bit 0 always set.
const HARD_CEILING: u64 = 62;

pub fn ceiling_from_env() -> u64 {
    static CEIL: OnceLock<u64> = OnceLock::new();
    *CEIL.get_or_init(|| {
        std::env::var(CEILING_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_CEILING)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyOptions {
    /// Also identify sets related by `x -> u x` for units `u` of `Z_n`.
    pub units: bool,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub ceiling: u64,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            units: false,
            jobs: 0,
            ceiling: ceiling_from_env(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnClassification {
    pub n: u64,
    /// Lexicographically least member of the class among sets containing 0.
    pub set: ZnSubset,
    pub tile_witness: Option<ZnSubset>,
    pub spectrum_witness: Option<ZnSubset>,
    pub cm: CmAnalysis,
    /// Number of subsets of `Z_n` in the class.
    pub orbit_size: u64,
}

impl ZnClassification {
    pub fn is_tile(&self) -> bool {
        self.tile_witness.is_some()
    }

    pub fn is_spectral(&self) -> bool {
        self.spectrum_witness.is_some()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub n: u64,
    pub units: bool,
    pub classes: u64,
    /// Sum of orbit sizes; equals `2^n - 1` when complete.
    pub subsets: u64,
    pub tiles: u64,
    pub spectral: u64,
    pub tile_not_spectral: u64,
    pub spectral_not_tile: u64,
    pub tiles_failing_t1: u64,
    pub tiles_failing_t2: u64,
    pub t2_readings_differ: u64,
}

impl SurveySummary {
    pub fn discrepancies(&self) -> u64 {
        self.tile_not_spectral + self.spectral_not_tile
    }
}

#[derive(Clone, Debug)]
pub struct Survey {
    pub rows: Vec<ZnClassification>,
    pub summary: SurveySummary,
}

struct Cyclic {
    n: u32,
    full: u64,
}

impl Cyclic {
    fn new(n: u64) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Cyclic { n: n as u32, full }
    }

    fn rotate(&self, m: u64, t: u32) -> u64 {
        let t = t % self.n;
        if t == 0 {
            return m;
        }
        ((m << t) | (m >> (self.n - t))) & self.full
    }

    /// Translate that moves `a` to 0.
    fn to_zero(&self, m: u64, a: u32) -> u64 {
        self.rotate(m, self.n - a)
    }

    fn scale(&self, m: u64, u: u32) -> u64 {
        let mut out = 0u64;
        let mut w = m;
        while w != 0 {
            let i = w.trailing_zeros();
            w &= w - 1;
            out |= 1 << ((i as u64 * u as u64) % self.n as u64);
        }
        out
    }

    /// Least translate containing 0.
    fn translation_canonical(&self, m: u64) -> u64 {
        let mut best = m;
        let mut w = m;
        while w != 0 {
            let a = w.trailing_zeros();
            w &= w - 1;
            let t = self.to_zero(m, a);
            if lex_less(t, best) {
                best = t;
            }
        }
        best
    }

    fn is_translation_canonical(&self, m: u64) -> bool {
        let mut w = m & !1;
        while w != 0 {
            let a = w.trailing_zeros();
            w &= w - 1;
            if lex_less(self.to_zero(m, a), m) {
                return false;
            }
        }
        true
    }

    /// Smallest `t > 0` with `m + t = m`; the number of distinct translates.
    fn translation_orbit(&self, m: u64) -> u64 {
        (1..=self.n)
            .filter(|t| self.n % t == 0)
            .find(|&t| self.rotate(m, t) == m)
            .unwrap() as u64
    }
}

/// Lexicographic order on sorted element lists of equal length: at the
/// lowest differing position the smaller set holds the element.
fn lex_less(x: u64, y: u64) -> bool {
    let d = x ^ y;
    d != 0 && x & (d & d.wrapping_neg()) != 0
}

fn units_of(n: u64) -> Vec<u32> {
    (1..n.max(2)).filter(|&u| gcd(u, n) == 1).map(|u| u as u32).collect()
}

fn classify(n: u64, mask: u64, orbit_size: u64) -> ZnClassification {
    let set = ZnSubset::from_bits(n, Bits::from_mask(n as usize, mask));
    let tile_witness = find_tiling_complement_zn(&set).expect("nonempty");
    let spectrum_witness = find_spectrum_zn(&set).expect("nonempty");
    let cm = analyze(&set.lift()).expect("nonempty");
    ZnClassification {
        n,
        set,
        tile_witness,
        spectrum_witness,
        cm,
        orbit_size,
    }
}

/// Exhaustive classification of the subsets of `Z_n`.
pub fn survey(n: u64, opts: &SurveyOptions) -> Result<Survey> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let ceiling = opts.ceiling.min(HARD_CEILING);
    if n > ceiling {
        return Err(Error::CeilingExceeded { n, ceiling });
    }
    let cyc = Cyclic::new(n);
    let units = if opts.units { units_of(n) } else { Vec::new() };

    // Masks are 1 | (r << 1) for r in [0, 2^(n-1)), split into prefix blocks.
    let total: u64 = 1 << (n - 1);
    let block_bits = (n - 1).min(12);
    let block_len: u64 = 1 << block_bits;
    let blocks = total / block_len;

    let work = || -> Vec<ZnClassification> {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut out = Vec::new();
                for r in b * block_len..(b + 1) * block_len {
                    let m = 1 | (r << 1);
                    if !cyc.is_translation_canonical(m) {
                        continue;
                    }
                    let t_orbit = cyc.translation_orbit(m);
                    let orbit = if units.is_empty() {
                        t_orbit
                    } else {
                        let mut images = BTreeSet::new();
                        let mut least = true;
                        for &u in &units {
                            let img = cyc.translation_canonical(cyc.scale(m, u));
                            if lex_less(img, m) {
                                least = false;
                                break;
                            }
                            images.insert(img);
                        }
                        if !least {
                            continue;
                        }
                        images.len() as u64 * t_orbit
                    };
                    out.push(classify(n, m, orbit));
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };

    let rows = if opts.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .expect("thread pool")
            .install(work)
    };

    let mut summary = SurveySummary {
        n,
        units: opts.units,
        ..Default::default()
    };
    for row in &rows {
        summary.classes += 1;
        summary.subsets += row.orbit_size;
        let (tile, spectral) = (row.is_tile(), row.is_spectral());
        summary.tiles += tile as u64;
        summary.spectral += spectral as u64;
        summary.tile_not_spectral += (tile && !spectral) as u64;
        summary.spectral_not_tile += (spectral && !tile) as u64;
        summary.tiles_failing_t1 += (tile && !row.cm.t1) as u64;
        summary.tiles_failing_t2 += (tile && !row.cm.t2) as u64;
        summary.t2_readings_differ += row.cm.t2_readings_differ() as u64;
    }
    Ok(Survey { rows, summary })
}
