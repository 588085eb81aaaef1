//! Exact certificates for tiling and spectral pairs on `Z_n` and `Z`.
//!
//! Every negative verdict carries a witness that can be checked on its own
//! with [`recheck_tiling_witness`] or [`recheck_spectral_witness`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::cm::{RationalSpectrum, TilingSet};
use crate::error::{Error, Result};
use crate::poly::{cyclotomic_divides_mask, root_order, IntSet};
use crate::rational::Fraction;

/// Subset of `Z_n` stored as a characteristic bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZnSubset {
    n: u64,
    bits: Bits,
}

impl ZnSubset {
    /// Elements must lie in `[0, n)`.
    pub fn new(n: u64, elements: &[u64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut bits = Bits::empty(n as usize);
        for &e in elements {
            if e >= n {
                return Err(Error::OutOfRange { element: e, modulus: n });
            }
            if bits.contains(e as usize) {
                return Err(Error::DuplicateElement(e));
            }
            bits.insert(e as usize);
        }
        Ok(ZnSubset { n, bits })
    }

    /// Reduces every element mod `n`; residues must be distinct.
    pub fn reduce(n: u64, set: &IntSet) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut bits = Bits::empty(n as usize);
        for e in set.iter() {
            let r = (e % n) as usize;
            if bits.contains(r) {
                return Err(Error::DuplicateElement(e));
            }
            bits.insert(r);
        }
        Ok(ZnSubset { n, bits })
    }

    pub fn from_bits(n: u64, bits: Bits) -> Self {
        assert_eq!(bits.len() as u64, n);
        ZnSubset { n, bits }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn elements(&self) -> Vec<u64> {
        self.bits.iter().map(|i| i as u64).collect()
    }

    pub fn translate(&self, t: u64) -> ZnSubset {
        ZnSubset {
            n: self.n,
            bits: self.bits.rotate((t % self.n) as usize),
        }
    }

    /// The integer set with the same residues in `[0, n)`.
    pub fn lift(&self) -> IntSet {
        IntSet::from_iter_dedup(self.elements())
    }

    /// `A(zeta_n^k) = 0` for the mask polynomial of the lifted set.
    pub fn mask_vanishes(&self, k: i64) -> bool {
        cyclotomic_divides_mask(root_order(self.n, k), self.bits.iter().map(|i| i as u64))
            .expect("order >= 1")
    }

    /// Bitset of `k in [0, n)` with `A(zeta_n^k) = 0`, decided once per
    /// divisor `d = n / gcd(n, k)`.
    pub fn vanishing_residues(&self) -> Bits {
        let n = self.n as usize;
        let mut by_order: HashMap<u64, bool> = HashMap::new();
        let mut out = Bits::empty(n);
        for k in 1..n {
            let d = root_order(self.n, k as i64);
            let v = *by_order.entry(d).or_insert_with(|| self.mask_vanishes(k as i64));
            if v {
                out.insert(k);
            }
        }
        out
    }
}

impl fmt::Debug for ZnSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊂ Z_{}", self.bits, self.n)
    }
}

/// Falsifying evidence attached to a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two distinct pairs `(a, c)` land on the same residue.
    Collision {
        modulus: u64,
        residue: u64,
        first: (u64, u64),
        second: (u64, u64),
    },
    /// No pair `(a, c)` lands on this residue.
    Uncovered { modulus: u64, residue: u64 },
    /// `|Λ| != |A|`.
    DeficientCount { expected: usize, found: usize },
    /// `A(zeta_n^{λ - λ'}) != 0` for two frequencies of `Z_n`.
    NonOrthogonalZn { modulus: u64, lambda: u64, lambda_prime: u64 },
    /// `A(e^{2πi(γ - γ')}) != 0` for two rational frequencies.
    NonOrthogonal { gamma: Fraction, gamma_prime: Fraction },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl Certificate {
    pub fn valid() -> Self {
        Certificate { verdict: true, witness: None }
    }

    pub fn invalid(witness: Witness) -> Self {
        Certificate { verdict: false, witness: Some(witness) }
    }
}

/// Checks that `xs ⊕ ys` covers `Z_n` once. Negative verdicts report the
/// smallest doubly covered residue, or else the smallest uncovered one.
fn cover_once(n: u64, xs: &[u64], ys: &[u64]) -> Certificate {
    let mut first: Vec<Option<(u64, u64)>> = vec![None; n as usize];
    let mut second: Vec<Option<(u64, u64)>> = vec![None; n as usize];
    for &x in xs {
        for &y in ys {
            let r = (((x % n) + (y % n)) % n) as usize;
            if first[r].is_none() {
                first[r] = Some((x, y));
            } else if second[r].is_none() {
                second[r] = Some((x, y));
            }
        }
    }
    if let Some(r) = second.iter().position(Option::is_some) {
        return Certificate::invalid(Witness::Collision {
            modulus: n,
            residue: r as u64,
            first: first[r].unwrap(),
            second: second[r].unwrap(),
        });
    }
    match first.iter().position(Option::is_none) {
        Some(r) => Certificate::invalid(Witness::Uncovered { modulus: n, residue: r as u64 }),
        None => Certificate::valid(),
    }
}

/// Is `a ⊕ c = Z_n`?
pub fn is_tiling_zn(a: &ZnSubset, c: &ZnSubset) -> Result<Certificate> {
    if a.n != c.n {
        return Err(Error::ModulusMismatch(a.n, c.n));
    }
    Ok(cover_once(a.n, &a.elements(), &c.elements()))
}

/// Is `lam` a spectrum for `a` in `Z_n`?
pub fn is_spectral_pair_zn(a: &ZnSubset, lam: &ZnSubset) -> Result<Certificate> {
    if a.n != lam.n {
        return Err(Error::ModulusMismatch(a.n, lam.n));
    }
    if a.len() != lam.len() {
        return Ok(Certificate::invalid(Witness::DeficientCount {
            expected: a.len(),
            found: lam.len(),
        }));
    }
    let zeros = a.vanishing_residues();
    let l = lam.elements();
    for (i, &x) in l.iter().enumerate() {
        for &y in &l[i + 1..] {
            let diff = ((x + a.n - y) % a.n) as usize;
            if !zeros.contains(diff) {
                return Ok(Certificate::invalid(Witness::NonOrthogonalZn {
                    modulus: a.n,
                    lambda: x,
                    lambda_prime: y,
                }));
            }
        }
    }
    Ok(Certificate::valid())
}

/// Is `Γ` a spectrum for the integer set `a` (equivalently, by the period-1
/// structure, is `Γ + Z` a spectrum for `a + [0,1)`)?
pub fn is_spectrum_z(a: &IntSet, gamma: &RationalSpectrum) -> Result<Certificate> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.len() != gamma.len() {
        return Ok(Certificate::invalid(Witness::DeficientCount {
            expected: a.len(),
            found: gamma.len(),
        }));
    }
    let q = gamma.denom();
    let nums = gamma.numerators();
    let mut by_order: HashMap<u64, bool> = HashMap::new();
    for (i, &x) in nums.iter().enumerate() {
        for &y in &nums[i + 1..] {
            let d = root_order(q, x as i64 - y as i64);
            let vanishes = *by_order
                .entry(d)
                .or_insert_with(|| cyclotomic_divides_mask(d, a.iter()).expect("d >= 1"));
            if !vanishes {
                return Ok(Certificate::invalid(Witness::NonOrthogonal {
                    gamma: Fraction::new(x as i64, q as i64),
                    gamma_prime: Fraction::new(y as i64, q as i64),
                }));
            }
        }
    }
    Ok(Certificate::valid())
}

/// Does `a ⊕ (block ⊕ modulus·Z) = Z`? Reduced to the finite check that
/// `a + block` covers `Z_modulus` exactly once.
pub fn is_tiling_z(a: &IntSet, t: &TilingSet) -> Result<Certificate> {
    if t.modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    Ok(cover_once(t.modulus, a.elements(), t.block.elements()))
}

/// Re-derives a tiling witness from the inputs alone. `a` and `c` are the
/// two summands as integers (residues are taken mod the witness modulus).
pub fn recheck_tiling_witness(a: &[u64], c: &[u64], w: &Witness) -> bool {
    match *w {
        Witness::Collision { modulus, residue, first, second } => {
            let member = |(x, y): (u64, u64)| {
                a.contains(&x) && c.contains(&y) && (x + y) % modulus == residue
            };
            first != second && member(first) && member(second)
        }
        Witness::Uncovered { modulus, residue } => a
            .iter()
            .all(|&x| c.iter().all(|&y| (x + y) % modulus != residue)),
        _ => false,
    }
}

/// Re-derives a spectral witness against the mask polynomial of `a`.
pub fn recheck_spectral_witness(a: &IntSet, w: &Witness) -> bool {
    match *w {
        Witness::DeficientCount { expected, found } => expected == a.len() && expected != found,
        Witness::NonOrthogonalZn { modulus, lambda, lambda_prime } => {
            lambda != lambda_prime
                && !cyclotomic_divides_mask(root_order(modulus, lambda as i64 - lambda_prime as i64), a.iter())
                    .expect("order >= 1")
        }
        Witness::NonOrthogonal { gamma, gamma_prime } => {
            let diff = gamma.0 - gamma_prime.0;
            let q = *diff.denom() as u64;
            gamma != gamma_prime
                && !cyclotomic_divides_mask(root_order(q, *diff.numer()), a.iter()).expect("order >= 1")
        }
        _ => false,
    }
}
