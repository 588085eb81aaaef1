//! Moving between `Z_n` and `Z`: block lifts `A + n{0,…,k-1}`, the
//! mod-`k` decomposition of a tile, and spectrum assembly from a common
//! spectrum of the residue-class parts.

use serde::{Deserialize, Serialize};

use crate::cm::{RationalSpectrum, TilingSet};
use crate::error::{Error, Result};
use crate::poly::{mask_polynomial, IntPoly, IntSet};
use crate::rational::Fraction;
use crate::search::{find_spectrum_zn, find_tiling_complement_zn};
use crate::verify::ZnSubset;

/// `B(k) = a + n·{0, …, k-1}` as an integer set of size `|a|·k`.
pub fn lift_block(a: &ZnSubset, k: u64) -> IntSet {
    let n = a.modulus();
    IntSet::from_iter_dedup(
        a.elements()
            .into_iter()
            .flat_map(|x| (0..k).map(move |j| x + n * j)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub residue: u64,
    /// Least element of the class.
    pub offset: u64,
    /// `(a - offset) / k` over the elements of the class.
    pub part: IntSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModKDecomposition {
    pub k: u64,
    /// Classes present in the set, by increasing residue.
    pub classes: Vec<ResidueClass>,
    /// Every residue class mod `k` present with `|A|/k` elements.
    pub equidistributed: bool,
}

impl ModKDecomposition {
    /// `Σ x^{offset_i} A_i(x^k)`.
    pub fn reassemble(&self) -> IntPoly {
        self.classes.iter().fold(IntPoly::zero(), |acc, c| {
            let part = mask_polynomial(&c.part).expect("classes are nonempty");
            &acc + &part.compose_x_pow(self.k as usize).shift(c.offset as usize)
        })
    }

    pub fn parts(&self) -> Vec<IntSet> {
        self.classes.iter().map(|c| c.part.clone()).collect()
    }
}

pub fn decompose_mod_k(a: &IntSet, k: u64) -> Result<ModKDecomposition> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::ZeroModulus);
    }
    let classes: Vec<ResidueClass> = (0..k)
        .filter_map(|i| {
            let members: Vec<u64> = a.iter().filter(|x| x % k == i).collect();
            let offset = *members.first()?;
            let part = IntSet::from_iter_dedup(members.iter().map(|x| (x - offset) / k));
            Some(ResidueClass { residue: i, offset, part })
        })
        .collect();
    let equidistributed = a.len() as u64 % k == 0
        && classes.len() as u64 == k
        && classes.iter().all(|c| c.part.len() as u64 * k == a.len() as u64);
    Ok(ModKDecomposition { k, classes, equidistributed })
}

/// `Γ = (1/k)Γ' ⊕ {0, 1/k, …, (k-1)/k}`, with period `1/k`.
pub fn assemble_spectrum_mod_k(gamma_prime: &RationalSpectrum, k: u64) -> Result<RationalSpectrum> {
    if k == 0 {
        return Err(Error::ZeroModulus);
    }
    let q = gamma_prime.denom();
    let nums = gamma_prime
        .numerators()
        .iter()
        .flat_map(|&g| (0..k).map(move |j| g + j * q));
    RationalSpectrum::new(k * q, nums, Fraction::new(1, k as i64))
}

/// Packages a complement in `Z_L` as the tiling set `C ⊕ LZ` of `Z`.
pub fn periodize_complement(c: &ZnSubset) -> Result<TilingSet> {
    if c.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(TilingSet {
        block: c.lift(),
        modulus: c.modulus(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftStep {
    pub k: u64,
    pub tile: bool,
    pub spectral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftProfile {
    pub n: u64,
    pub steps: Vec<LiftStep>,
    /// Smallest `k` from which the (tile, spectral) verdicts stay constant
    /// up to the largest `k` examined.
    pub stable_from: u64,
}

/// Classifies `B(k) ⊂ Z_{nk}` for `k = 1..=k_max`.
pub fn lift_profile(a: &ZnSubset, k_max: u64) -> Result<LiftProfile> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = a.modulus();
    let mut steps = Vec::new();
    for k in 1..=k_max.max(1) {
        let b = ZnSubset::new(n * k, lift_block(a, k).elements())?;
        steps.push(LiftStep {
            k,
            tile: find_tiling_complement_zn(&b)?.is_some(),
            spectral: find_spectrum_zn(&b)?.is_some(),
        });
    }
    let last = steps.last().map(|s| (s.tile, s.spectral)).unwrap();
    let stable_from = steps
        .iter()
        .rev()
        .take_while(|s| (s.tile, s.spectral) == last)
        .last()
        .map(|s| s.k)
        .unwrap();
    Ok(LiftProfile { n, steps, stable_from })
}
