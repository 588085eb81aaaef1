//! Rational step sets: finite unions of half-open intervals `[lo, hi)` with
//! rational endpoints, their fibers over `[0, 1/p)` and spectra built from
//! the fibers.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cm::RationalSpectrum;
use crate::error::{Error, Result};
use crate::poly::IntSet;
use crate::rational::Fraction;
use crate::verify::{is_spectrum_z, Certificate};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Fraction,
    pub hi: Fraction,
}

/// A piece of the fundamental domain `[0, 1/p)`.
pub type Cell = Interval;

impl Interval {
    pub fn new(lo: Fraction, hi: Fraction) -> Result<Self> {
        if lo >= hi {
            return Err(Error::EmptyInterval(lo.to_string(), hi.to_string()));
        }
        Ok(Interval { lo, hi })
    }

    pub fn length(&self) -> Fraction {
        Fraction(self.hi.0 - self.lo.0)
    }

    pub fn contains(&self, x: Fraction) -> bool {
        self.lo <= x && x < self.hi
    }

    fn shifted(&self, t: Rational64) -> Interval {
        Interval {
            lo: Fraction(self.lo.0 + t),
            hi: Fraction(self.hi.0 + t),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Disjoint, sorted, merged intervals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StepSet {
    intervals: Vec<Interval>,
}

impl StepSet {
    /// Union of the given intervals; overlapping and adjacent ones merge.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptySet);
        }
        intervals.sort_by_key(|i| i.lo);
        let mut merged: Vec<Interval> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        Ok(StepSet { intervals: merged })
    }

    /// `A + [0, 1)`.
    pub fn from_int_set(a: &IntSet) -> Result<Self> {
        let ivs = a
            .iter()
            .map(|x| Interval::new(Fraction::integer(x as i64), Fraction::integer(x as i64 + 1)))
            .collect::<Result<Vec<_>>>()?;
        StepSet::new(ivs)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn measure(&self) -> Fraction {
        Fraction(self.intervals.iter().map(|i| i.length().0).sum())
    }

    pub fn contains(&self, x: Fraction) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// `factor · Ω` for a positive factor.
    pub fn rescale(&self, factor: Fraction) -> Result<Self> {
        if !factor.0.is_positive() {
            return Err(Error::Parse(format!("scale factor {factor} must be positive")));
        }
        let ivs = self
            .intervals
            .iter()
            .map(|i| Interval { lo: Fraction(i.lo.0 * factor.0), hi: Fraction(i.hi.0 * factor.0) })
            .collect();
        StepSet::new(ivs)
    }

    /// Rescales to measure 1.
    pub fn normalized(&self) -> Result<Self> {
        let m = self.measure();
        self.rescale(Fraction(m.0.recip()))
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses comma-separated `lo..hi` intervals, e.g. `0..1/2,1..3/2`.
impl FromStr for StepSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let ivs = s
            .split(',')
            .map(|tok| {
                let (lo, hi) = tok
                    .split_once("..")
                    .ok_or_else(|| Error::Parse(format!("interval {tok:?} is not lo..hi")))?;
                Interval::new(lo.parse()?, hi.parse()?)
            })
            .collect::<Result<Vec<_>>>()?;
        StepSet::new(ivs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCell {
    pub cell: Cell,
    /// `{k in Z : x + k/p in Ω}` for every `x` in the cell.
    pub fiber: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDecomposition {
    pub p: u64,
    /// Partition of `[0, 1/p)`, adjacent cells with equal fibers merged.
    pub cells: Vec<FiberCell>,
}

impl FiberDecomposition {
    pub fn fiber_at(&self, x: Fraction) -> Option<&[i64]> {
        self.cells
            .iter()
            .find(|c| c.cell.contains(x))
            .map(|c| c.fiber.as_slice())
    }

    /// `∪ (A_S + S/p)`.
    pub fn reassemble(&self) -> Result<StepSet> {
        let p = self.p as i64;
        let ivs = self
            .cells
            .iter()
            .flat_map(|c| c.fiber.iter().map(move |&k| c.cell.shifted(Rational64::new(k, p))))
            .collect();
        StepSet::new(ivs)
    }
}

fn fiber_of(omega: &StepSet, x: Rational64, p: i64) -> Vec<i64> {
    let pr = Rational64::from_integer(p);
    let mut fiber = Vec::new();
    for iv in omega.intervals() {
        // lo <= x + k/p < hi  <=>  p(lo - x) <= k < p(hi - x)
        let first = ((iv.lo.0 - x) * pr).ceil().to_integer();
        let end = ((iv.hi.0 - x) * pr).ceil().to_integer();
        fiber.extend(first..end);
    }
    fiber
}

/// Fiber decomposition of `Ω` over `[0, 1/p)`; succeeds only when every fiber
/// has exactly `p` elements, i.e. `Ω` is a `p`-tile by `(1/p)Z`.
pub fn multiplicity_profile(omega: &StepSet, p: u64) -> Result<FiberDecomposition> {
    if p == 0 {
        return Err(Error::ZeroModulus);
    }
    if omega.measure() != Fraction::one() {
        return Err(Error::NotNormalized(omega.measure().to_string()));
    }
    let pi = p as i64;
    let width = Rational64::new(1, pi);
    let reduce = |e: Rational64| e - (e / width).floor() * width;
    let mut cuts: Vec<Rational64> = vec![Rational64::zero(), width];
    for iv in omega.intervals() {
        cuts.push(reduce(iv.lo.0));
        cuts.push(reduce(iv.hi.0));
    }
    cuts.sort();
    cuts.dedup();

    let mut cells: Vec<FiberCell> = Vec::new();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = (lo + hi) / Rational64::from_integer(2);
        let fiber = fiber_of(omega, mid, pi);
        let cell = Interval { lo: Fraction(lo), hi: Fraction(hi) };
        if fiber.len() as u64 != p {
            return Err(Error::NotPTile { p, cell, fiber });
        }
        match cells.last_mut() {
            Some(last) if last.fiber == fiber => last.cell.hi = cell.hi,
            _ => cells.push(FiberCell { cell, fiber }),
        }
    }
    Ok(FiberDecomposition { p, cells })
}

/// Checks that `Γ` is a spectrum of every fiber `S` (as an integer set), which
/// certifies `p·(Γ + Z)` as a spectrum of `Ω`.
pub fn verify_fiber_spectrum(fd: &FiberDecomposition, gamma: &RationalSpectrum) -> Result<Certificate> {
    if gamma.len() as u64 != fd.p {
        return Err(Error::CardinalityMismatch { expected: fd.p as usize, found: gamma.len() });
    }
    for c in &fd.cells {
        let min = *c.fiber.iter().min().expect("fibers have p >= 1 elements");
        let s = IntSet::new(c.fiber.iter().map(|&k| (k - min) as u64).collect())?;
        let cert = is_spectrum_z(&s, gamma)?;
        if !cert.verdict {
            return Ok(cert);
        }
    }
    Ok(Certificate::valid())
}

/// `Ω = ∪ ([r_i, r_{i+1}) + B_i / p)` for cut points `0 = r_0 < … < r_n = 1/p`.
pub fn assemble_omega(family: &[IntSet], cuts: &[Fraction]) -> Result<StepSet> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    let p = first.len();
    if p == 0 {
        return Err(Error::EmptySet);
    }
    if let Some(b) = family.iter().find(|b| b.len() != p) {
        return Err(Error::CardinalityMismatch { expected: p, found: b.len() });
    }
    if cuts.len() != family.len() + 1 {
        return Err(Error::BadPartition(format!(
            "{} cut points for {} sets",
            cuts.len(),
            family.len()
        )));
    }
    let width = Rational64::new(1, p as i64);
    if cuts[0].0 != Rational64::zero() || cuts[cuts.len() - 1].0 != width {
        return Err(Error::BadPartition(format!("cuts must run from 0 to 1/{p}")));
    }
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadPartition("cuts must be strictly increasing".into()));
    }
    let mut ivs = Vec::new();
    for (b, w) in family.iter().zip(cuts.windows(2)) {
        let cell = Interval { lo: w[0], hi: w[1] };
        ivs.extend(b.iter().map(|k| cell.shifted(Rational64::new(k as i64, p as i64))));
    }
    StepSet::new(ivs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d)
    }

    fn set(v: &[u64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    fn spectrum(v: &[(i64, i64)]) -> RationalSpectrum {
        let f: Vec<Fraction> = v.iter().map(|&(n, d)| fr(n, d)).collect();
        RationalSpectrum::from_fractions(&f, Fraction::one()).unwrap()
    }

    #[test]
    fn from_int_set_examples() {
        assert_eq!(StepSet::from_int_set(&set(&[0, 1, 2, 3])).unwrap(), "0..4".parse().unwrap());
        assert_eq!(StepSet::from_int_set(&set(&[0, 2])).unwrap(), "0..1,2..3".parse().unwrap());
        assert_eq!(StepSet::from_int_set(&set(&[0])).unwrap().to_string(), "[0/1, 1/1)");
    }

    #[test]
    fn profile_examples() {
        let unit: StepSet = "0..1".parse().unwrap();
        let fd = multiplicity_profile(&unit, 1).unwrap();
        assert_eq!(fd.cells, vec![FiberCell { cell: Interval::new(fr(0, 1), fr(1, 1)).unwrap(), fiber: vec![0] }]);

        let omega: StepSet = "0..1/2,1..3/2".parse().unwrap();
        let fd = multiplicity_profile(&omega, 2).unwrap();
        assert_eq!(fd.cells.len(), 1);
        assert_eq!(fd.cells[0].fiber, vec![0, 2]);
        assert_eq!(fd.reassemble().unwrap(), omega);

        let fd = multiplicity_profile(&unit, 2).unwrap();
        assert_eq!(fd.cells[0].fiber, vec![0, 1]);
        assert_eq!(fd.cells[0].cell, Interval::new(fr(0, 1), fr(1, 2)).unwrap());
    }

    #[test]
    fn profile_errors() {
        let big: StepSet = "0..2".parse().unwrap();
        assert!(matches!(multiplicity_profile(&big, 2), Err(Error::NotNormalized(_))));
        // [0, 1/3) ∪ [1/2, 7/6): measure 1 but fibers of size 1 and 3.
        let lumpy: StepSet = "0..1/3,1/2..7/6".parse().unwrap();
        assert_eq!(lumpy.measure(), Fraction::one());
        assert!(matches!(multiplicity_profile(&lumpy, 2), Err(Error::NotPTile { p: 2, .. })));
    }

    #[test]
    fn fiber_spectrum_examples() {
        let unit: StepSet = "0..1".parse().unwrap();
        let fd = multiplicity_profile(&unit, 2).unwrap();
        assert!(verify_fiber_spectrum(&fd, &spectrum(&[(0, 1), (1, 2)])).unwrap().verdict);

        let omega: StepSet = "0..1/2,1..3/2".parse().unwrap();
        let fd = multiplicity_profile(&omega, 2).unwrap();
        let cert = verify_fiber_spectrum(&fd, &spectrum(&[(0, 1), (1, 2)])).unwrap();
        assert!(!cert.verdict);
        assert!(cert.witness.is_some());
        // {0, 2} does have spectrum {0, 1/4}.
        assert!(verify_fiber_spectrum(&fd, &spectrum(&[(0, 1), (1, 4)])).unwrap().verdict);

        let fd1 = multiplicity_profile(&unit, 1).unwrap();
        assert!(verify_fiber_spectrum(&fd1, &spectrum(&[(0, 1)])).unwrap().verdict);
        assert!(matches!(
            verify_fiber_spectrum(&fd1, &spectrum(&[(0, 1), (1, 2)])),
            Err(Error::CardinalityMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn assemble_examples() {
        let o = assemble_omega(&[set(&[0, 1])], &[fr(0, 1), fr(1, 2)]).unwrap();
        assert_eq!(o, "0..1".parse().unwrap());
        let o = assemble_omega(&[set(&[0, 2])], &[fr(0, 1), fr(1, 2)]).unwrap();
        assert_eq!(o, "0..1/2,1..3/2".parse().unwrap());

        let fam = [set(&[0, 1]), set(&[0, 2])];
        let o = assemble_omega(&fam, &[fr(0, 1), fr(1, 4), fr(1, 2)]).unwrap();
        assert_eq!(o, "0..3/4,5/4..3/2".parse().unwrap());
        assert_eq!(o.measure(), Fraction::one());
        let fd = multiplicity_profile(&o, 2).unwrap();
        assert_eq!(fd.fiber_at(fr(1, 8)), Some(&[0, 1][..]));
        assert_eq!(fd.fiber_at(fr(3, 8)), Some(&[0, 2][..]));
    }

    #[test]
    fn assemble_errors() {
        let fam = [set(&[0, 1])];
        assert!(matches!(assemble_omega(&fam, &[fr(0, 1), fr(1, 3)]), Err(Error::BadPartition(_))));
        assert!(matches!(assemble_omega(&fam, &[fr(0, 1)]), Err(Error::BadPartition(_))));
        let two = [set(&[0, 1]), set(&[0, 1])];
        assert!(matches!(
            assemble_omega(&two, &[fr(0, 1), fr(1, 2), fr(1, 2)]),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            assemble_omega(&[set(&[0, 1]), set(&[0])], &[fr(0, 1), fr(1, 4), fr(1, 2)]),
            Err(Error::CardinalityMismatch { expected: 2, found: 1 })
        ));
        assert_eq!(assemble_omega(&[], &[]), Err(Error::EmptyFamily));
    }

    #[test]
    fn parse_and_merge() {
        let s: StepSet = "1..2,0..1,5/2..3".parse().unwrap();
        assert_eq!(s.intervals().len(), 2);
        assert_eq!(s.measure(), fr(5, 2));
        assert!("0..0".parse::<StepSet>().is_err());
        assert!("0-1".parse::<StepSet>().is_err());
        assert_eq!(s.normalized().unwrap().measure(), Fraction::one());
    }
}
