//! Cyclotomic profile of a finite integer set: the prime-power divisor set
//! `S_A`, the two Coven-Meyerowitz conditions, the Łaba spectrum with its
//! period, and the Coven-Meyerowitz tiling set `B ⊕ MZ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{as_prime_power, coprime_part, divisors, euler_phi, factorize, lcm};
use crate::error::{Error, Result};
use crate::poly::{cyclotomic, cyclotomic_divides_mask, IntPoly, IntSet};
use crate::rational::Fraction;

/// `p^alpha` with `p` prime and `alpha >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub value: u64,
    pub p: u64,
    pub alpha: u32,
}

impl PrimePower {
    pub fn new(value: u64) -> Option<Self> {
        as_prime_power(value).map(|(p, alpha)| PrimePower { value, p, alpha })
    }
}

impl fmt::Debug for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmAnalysis {
    /// Canonical (minimum 0) translate of the input.
    pub set: IntSet,
    pub s_a: Vec<PrimePower>,
    pub t1: bool,
    /// Second condition over products of powers of pairwise distinct primes.
    pub t2: bool,
    /// Second condition over every subset of `S_A` with at least two
    /// elements, primes not necessarily distinct. `None` when `S_A` is too
    /// large to enumerate.
    pub t2_literal: Option<bool>,
    pub m: u64,
    /// Exponent `alpha_j` for each prime dividing `m`.
    pub alphas: BTreeMap<u64, u32>,
    pub laba_period: u64,
}

impl CmAnalysis {
    pub fn has_cm_property(&self) -> bool {
        self.t1 && self.t2
    }

    /// True when the two readings of the second condition disagree.
    pub fn t2_readings_differ(&self) -> bool {
        self.t2_literal.is_some_and(|lit| lit != self.t2)
    }

    pub fn s_a_values(&self) -> Vec<u64> {
        self.s_a.iter().map(|s| s.value).collect()
    }
}

/// Largest `S_A` for which the literal second condition is enumerated.
const LITERAL_T2_LIMIT: usize = 24;

fn mask_divisible(s: u64, set: &IntSet, max: u64) -> bool {
    if euler_phi(s) > max {
        return false;
    }
    cyclotomic_divides_mask(s, set.iter()).expect("s >= 1")
}

pub fn analyze(a: &IntSet) -> Result<CmAnalysis> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let (set, _) = a.canonicalize();
    let max = set.max_element().unwrap();

    let s_a: Vec<PrimePower> = crate::arith::prime_powers_with_phi_at_most(max)
        .into_iter()
        .filter(|&s| mask_divisible(s, &set, max))
        .map(|s| PrimePower::new(s).unwrap())
        .collect();

    let product: u64 = s_a.iter().map(|s| s.p).product();
    let t1 = product == set.len() as u64;

    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for s in &s_a {
        by_prime.entry(s.p).or_default().push(s.value);
    }
    let t2 = distinct_prime_products(&by_prime)
        .into_iter()
        .all(|s| mask_divisible(s, &set, max));

    let t2_literal = (s_a.len() <= LITERAL_T2_LIMIT).then(|| {
        let vals: Vec<u64> = s_a.iter().map(|s| s.value).collect();
        (1u64..1 << vals.len())
            .filter(|bits| bits.count_ones() >= 2)
            .all(|bits| {
                let s = vals
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .try_fold(1u64, |acc, (_, &v)| acc.checked_mul(v));
                s.is_some_and(|s| mask_divisible(s, &set, max))
            })
    });

    let m = s_a.iter().fold(1, |acc, s| lcm(acc, s.value));
    let present: BTreeSet<u64> = s_a.iter().map(|s| s.value).collect();
    let mut alphas = BTreeMap::new();
    let mut laba_period = 1u64;
    for (p, _) in factorize(m) {
        let mut alpha = 0u32;
        let mut q = p;
        while present.contains(&q) {
            alpha += 1;
            q *= p;
        }
        alphas.insert(p, alpha);
        laba_period *= p.pow(alpha);
    }

    Ok(CmAnalysis {
        set,
        s_a,
        t1,
        t2,
        t2_literal,
        m,
        alphas,
        laba_period,
    })
}

/// Products `s_1 ... s_n` (n >= 2) with one chosen power for each of at
/// least two distinct primes.
fn distinct_prime_products(by_prime: &BTreeMap<u64, Vec<u64>>) -> Vec<u64> {
    // (product, number of primes used)
    let mut acc: Vec<(u64, usize)> = vec![(1, 0)];
    for powers in by_prime.values() {
        let mut next = acc.clone();
        for &(prod, used) in &acc {
            for &s in powers {
                next.push((prod.saturating_mul(s), used + 1));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .filter(|&(_, used)| used >= 2)
        .map(|(prod, _)| prod)
        .collect()
}

/// Finite set `Γ ⊂ [0,1)` of rationals over one common denominator, together
/// with a period of the lattice-periodic set `Γ + Z`.
///
/// The denominator is always the least common denominator of the elements
/// (1 for `{0}`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalSpectrum {
    denom: u64,
    numerators: Vec<u64>,
    period: Fraction,
}

impl RationalSpectrum {
    /// Elements are `numerators[i] / denom`. Numerators are reduced mod
    /// `denom` and deduplicated.
    pub fn new(denom: u64, numerators: impl IntoIterator<Item = u64>, period: Fraction) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ZeroModulus);
        }
        let set: BTreeSet<u64> = numerators.into_iter().map(|k| k % denom).collect();
        let g = set.iter().fold(denom, |g, &k| crate::arith::gcd(g, k));
        Ok(RationalSpectrum {
            denom: denom / g,
            numerators: set.into_iter().map(|k| k / g).collect(),
            period,
        })
    }

    pub fn from_fractions(elements: &[Fraction], period: Fraction) -> Result<Self> {
        for f in elements {
            if !f.in_unit_interval() {
                return Err(Error::NotInUnitInterval(f.to_string()));
            }
        }
        let denom = elements.iter().fold(1u64, |d, f| lcm(d, f.denom() as u64));
        let nums = elements
            .iter()
            .map(|f| f.numer() as u64 * (denom / f.denom() as u64));
        Self::new(denom, nums, period)
    }

    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    pub fn period(&self) -> Fraction {
        self.period
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn fractions(&self) -> Vec<Fraction> {
        self.numerators
            .iter()
            .map(|&k| Fraction::new(k as i64, self.denom as i64))
            .collect()
    }

    pub fn with_period(mut self, period: Fraction) -> Self {
        self.period = period;
        self
    }

    /// Same set over the (possibly larger) denominator `q`, if representable.
    pub fn numerators_over(&self, q: u64) -> Option<Vec<u64>> {
        (q % self.denom == 0).then(|| self.numerators.iter().map(|&k| k * (q / self.denom)).collect())
    }
}

impl fmt::Debug for RationalSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + {}Z", self.fractions(), self.period)
    }
}

/// `T = block ⊕ modulus·Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TilingSet {
    pub block: IntSet,
    pub modulus: u64,
}

/// `Γ_Ł = { Σ k_s / s mod 1 : 0 <= k_s < p(s) }`, with the Łaba period
/// `1 / p_Ł` recorded as its period.
pub fn laba_spectrum(c: &CmAnalysis) -> RationalSpectrum {
    let m = c.m;
    let mut sums: Vec<u64> = vec![0];
    for s in &c.s_a {
        let step = m / s.value;
        sums = sums
            .iter()
            .flat_map(|&base| (0..s.p).map(move |k| (base + k * step) % m))
            .collect();
    }
    RationalSpectrum::new(m, sums, Fraction::new(1, c.laba_period as i64))
        .expect("m >= 1")
}

/// `B(x) = Π Φ_s(x^{t(s)})` over prime powers `s | M` outside `S_A`, with
/// `t(s)` the largest divisor of `M` coprime to `s`.
pub fn cm_tiling_set(c: &CmAnalysis) -> Result<TilingSet> {
    let m = c.m;
    let in_s_a: BTreeSet<u64> = c.s_a.iter().map(|s| s.value).collect();
    let mut b = IntPoly::one();
    for s in divisors(m) {
        if as_prime_power(s).is_none() || in_s_a.contains(&s) {
            continue;
        }
        let t = coprime_part(m, s);
        b = &b * &cyclotomic(s)?.compose_x_pow(t as usize);
    }
    let block = b
        .support_if_binary()
        .map_err(|(degree, coefficient)| Error::NonBinaryCoefficients {
            degree,
            coefficient: coefficient.to_string(),
        })?;
    Ok(TilingSet {
        block: IntSet::new(block)?,
        modulus: m,
    })
}

/// Minimal period `1/P` of `Γ + Z`: `P` is the largest divisor of the
/// denominator with `Γ + 1/P = Γ (mod 1)`.
pub fn minimal_period(sp: &RationalSpectrum) -> Result<Fraction> {
    if sp.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let q = sp.denom();
    let nums: BTreeSet<u64> = sp.numerators().iter().copied().collect();
    for p in divisors(q).into_iter().rev() {
        let shift = q / p;
        if nums.iter().all(|&k| nums.contains(&((k + shift) % q))) {
            return Ok(Fraction::new(1, p as i64));
        }
    }
    unreachable!("1 is always a period of Γ + Z")
}
