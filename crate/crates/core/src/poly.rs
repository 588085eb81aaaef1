//! Exact integer polynomials, cyclotomic polynomials and root-of-unity
//! vanishing tests.
//!
//! Coefficients are arbitrary precision. Cyclotomic polynomials are built by
//! dividing `x^s - 1` by every `Phi_d` with `d | s, d < s` and are memoized in
//! a process-wide table. Evaluation at a root of unity is never done
//! numerically: `p(zeta_n^k) = 0` holds exactly when `Phi_d | p` for
//! `d = n / gcd(n, k)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, gcd};
use crate::error::{Error, Result};

/// Dense polynomial with integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector and [`IntPoly::degree`] returns `None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.coeffs[0] -= 1;
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(x^t)`.
    pub fn compose_x_pow(&self, t: usize) -> Self {
        assert!(t >= 1, "compose_x_pow requires t >= 1");
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut coeffs = vec![BigInt::zero(); deg * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = c.clone();
        }
        IntPoly { coeffs }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Coefficients as `i64` when every one of them fits.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Exponents with nonzero coefficient when every coefficient is 0 or 1.
    pub fn support_if_binary(&self) -> std::result::Result<Vec<u64>, (usize, BigInt)> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_one() {
                out.push(i as u64);
            } else if !c.is_zero() {
                return Err((i, c.clone()));
            }
        }
        Ok(out)
    }

    /// Long division over `Z`. Returns `None` when some quotient coefficient
    /// would not be an integer, i.e. `d` does not divide `self` in `Z[x]`
    /// and no integral quotient exists.
    pub fn div_rem(&self, d: &IntPoly) -> Result<Option<(IntPoly, IntPoly)>> {
        let dd = d.degree().ok_or(Error::DivisionByZeroPoly)?;
        let lead = d.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let Some(pd) = self.degree() else {
            return Ok(Some((Self::zero(), Self::zero())));
        };
        if pd < dd {
            return Ok(Some((Self::zero(), self.clone())));
        }
        let mut quot = vec![BigInt::zero(); pd - dd + 1];
        for i in (dd..=pd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        Ok(Some((Self::from_coeffs(quot), Self::from_coeffs(rem))))
    }

    /// Exact quotient, panicking if `d` does not divide `self`. Internal use
    /// only, where divisibility is known.
    fn exact_div(&self, d: &IntPoly) -> IntPoly {
        match self.div_rem(d) {
            Ok(Some((q, r))) if r.is_zero() => q,
            _ => panic!("exact_div: {d:?} does not divide {self:?}"),
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

/// True iff `d` divides `p` in `Z[x]`.
pub fn divides(d: &IntPoly, p: &IntPoly) -> Result<bool> {
    Ok(matches!(p.div_rem(d)?, Some((_, r)) if r.is_zero()))
}

/// Finite set of non-negative integers, stored sorted and without duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct IntSet(Vec<u64>);

impl IntSet {
    /// Sorts the input; duplicates are rejected.
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(IntSet(elements))
    }

    /// Builds from an iterator, silently merging duplicates.
    pub fn from_iter_dedup<I: IntoIterator<Item = u64>>(it: I) -> Self {
        let mut v: Vec<u64> = it.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IntSet(v)
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_element(&self) -> Option<u64> {
        self.0.first().copied()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_canonical(&self) -> bool {
        self.min_element() == Some(0)
    }

    /// Translates so the minimum is 0; returns the set and the removed shift.
    pub fn canonicalize(&self) -> (IntSet, u64) {
        let shift = self.min_element().unwrap_or(0);
        (IntSet(self.0.iter().map(|&a| a - shift).collect()), shift)
    }

    pub fn translate(&self, t: u64) -> IntSet {
        IntSet(self.0.iter().map(|&a| a + t).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }
}

impl TryFrom<Vec<u64>> for IntSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        IntSet::new(v)
    }
}

impl From<IntSet> for Vec<u64> {
    fn from(s: IntSet) -> Vec<u64> {
        s.0
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of decimal non-negative integers.
impl FromStr for IntSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty set".into()));
        }
        let elements = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad element {tok:?} in {s:?}")));
                }
                tok.parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(elements)
    }
}

/// `sum x^a` over `a` in the set.
pub fn mask_polynomial(a: &IntSet) -> Result<IntPoly> {
    let max = a.max_element().ok_or(Error::EmptySet)? as usize;
    let mut coeffs = vec![BigInt::zero(); max + 1];
    for e in a.iter() {
        coeffs[e as usize] = BigInt::one();
    }
    Ok(IntPoly { coeffs })
}

struct Cyclotomic {
    poly: IntPoly,
    small: Option<Vec<i64>>,
}

fn memo() -> &'static RwLock<HashMap<u64, Arc<Cyclotomic>>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, Arc<Cyclotomic>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Environment override for the maximum number of memoized cyclotomics.
pub const MEMO_CAP_ENV: &str = "FUGLEDE_MEMO_CAP";
const DEFAULT_MEMO_CAP: usize = 4096;

fn memo_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MEMO_CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_MEMO_CAP)
    })
}

fn cyclotomic_entry(s: u64) -> Arc<Cyclotomic> {
    if let Some(c) = memo().read().expect("memo poisoned").get(&s) {
        return Arc::clone(c);
    }
    let mut poly = IntPoly::x_pow_minus_one(s as usize);
    for d in divisors(s) {
        if d < s {
            poly = poly.exact_div(&cyclotomic_entry(d).poly);
        }
    }
    let small = poly.to_i64_vec();
    let entry = Arc::new(Cyclotomic { poly, small });
    let mut table = memo().write().expect("memo poisoned");
    if table.len() < memo_cap() {
        table.entry(s).or_insert_with(|| Arc::clone(&entry));
    }
    entry
}

/// The `s`-th cyclotomic polynomial.
pub fn cyclotomic(s: u64) -> Result<IntPoly> {
    if s == 0 {
        return Err(Error::InvalidIndex);
    }
    Ok(cyclotomic_entry(s).poly.clone())
}

/// Remainder of a polynomial of degree `< r.len()` modulo a monic divisor,
/// tested for zero in machine integers. `None` on overflow.
fn monic_rem_is_zero_small(mut r: Vec<i64>, div: &[i64]) -> Option<bool> {
    let dd = div.len() - 1;
    debug_assert_eq!(div[dd], 1);
    for i in (dd..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for (j, &dc) in div.iter().enumerate() {
            let idx = i - dd + j;
            r[idx] = r[idx].checked_sub(c.checked_mul(dc)?)?;
        }
    }
    Some(r[..dd.min(r.len())].iter().all(|&c| c == 0))
}

fn monic_rem_is_zero_big(r: Vec<BigInt>, div: &IntPoly) -> bool {
    let p = IntPoly::from_coeffs(r);
    divides(div, &p).expect("cyclotomic is nonzero")
}

/// Folds `p` modulo `x^s - 1`. Since `Phi_s | x^s - 1`, the fold has the same
/// remainder modulo `Phi_s` as `p`.
fn fold_mod_x_pow_minus_one(p: &IntPoly, s: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); s.min(p.coeffs.len())];
    for (i, c) in p.coeffs.iter().enumerate() {
        out[i % s] += c;
    }
    out
}

/// True iff `Phi_s` divides `p`.
pub fn cyclotomic_divides(s: u64, p: &IntPoly) -> Result<bool> {
    if s == 0 {
        return Err(Error::InvalidIndex);
    }
    if p.is_zero() {
        return Ok(true);
    }
    // A nonzero polynomial of degree < phi(s) cannot be a multiple of Phi_s;
    // checked before building Phi_s, which can be large.
    if (p.degree().unwrap() as u64) < euler_phi(s) {
        return Ok(false);
    }
    let folded = fold_mod_x_pow_minus_one(p, s as usize);
    let entry = cyclotomic_entry(s);
    if let Some(div) = &entry.small {
        let small: Option<Vec<i64>> = folded.iter().map(ToPrimitive::to_i64).collect();
        if let Some(r) = small {
            if let Some(v) = monic_rem_is_zero_small(r, div) {
                return Ok(v);
            }
        }
    }
    Ok(monic_rem_is_zero_big(folded, &entry.poly))
}

/// True iff `Phi_s` divides the mask polynomial of the given exponents
/// (which need not be distinct). The fast path for 0/1 polynomials.
pub fn cyclotomic_divides_mask<I: IntoIterator<Item = u64>>(s: u64, exponents: I) -> Result<bool> {
    if s == 0 {
        return Err(Error::InvalidIndex);
    }
    let mut folded = vec![0i64; s as usize];
    let mut any = false;
    for e in exponents {
        folded[(e % s) as usize] += 1;
        any = true;
    }
    if !any {
        return Ok(true);
    }
    let entry = cyclotomic_entry(s);
    if let Some(div) = &entry.small {
        if let Some(v) = monic_rem_is_zero_small(folded.clone(), div) {
            return Ok(v);
        }
    }
    let big = folded.into_iter().map(BigInt::from).collect();
    Ok(monic_rem_is_zero_big(big, &entry.poly))
}

/// Order of `zeta_n^k`, i.e. `n / gcd(n, k mod n)`.
pub fn root_order(n: u64, k: i64) -> u64 {
    let r = k.rem_euclid(n as i64) as u64;
    n / gcd(n, r)
}

/// True iff `p(zeta_n^k) = 0` where `zeta_n = e^{2 pi i / n}`.
pub fn vanishes_at_root_of_unity(p: &IntPoly, n: u64, k: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    cyclotomic_divides(root_order(n, k), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn set(v: &[u64]) -> IntSet {
        IntSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn mask_polynomial_examples() {
        assert_eq!(mask_polynomial(&set(&[0, 1, 2, 3])).unwrap(), poly(&[1, 1, 1, 1]));
        assert_eq!(mask_polynomial(&set(&[0])).unwrap(), IntPoly::one());
        assert_eq!(mask_polynomial(&set(&[0, 2])).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(mask_polynomial(&IntSet::default()), Err(Error::EmptySet));
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), poly(&[1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(0), Err(Error::InvalidIndex));
    }

    #[test]
    fn phi_105_has_a_coefficient_two() {
        let c = cyclotomic(105).unwrap();
        assert_eq!(c.degree(), Some(48));
        assert_eq!(c.coeff(7), BigInt::from(-2));
        assert_eq!(c.coeff(41), BigInt::from(-2));
    }

    #[test]
    fn divides_examples() {
        let a = poly(&[1, 1, 1, 1]);
        assert!(divides(&poly(&[1, 1]), &a).unwrap());
        assert!(!divides(&poly(&[1, 1, 1]), &a).unwrap());
        assert!(divides(&a, &a).unwrap());
        assert_eq!(divides(&IntPoly::zero(), &a), Err(Error::DivisionByZeroPoly));
        // Non-monic divisor with rational but non-integral quotient.
        assert!(!divides(&poly(&[0, 2]), &poly(&[0, 1])).unwrap());
        assert!(divides(&poly(&[0, 2]), &poly(&[0, 4, 6])).unwrap());
    }

    #[test]
    fn division_identity() {
        let p = poly(&[3, -1, 4, 1, -5, 9, 2]);
        let d = poly(&[1, 0, 1]);
        let (q, r) = p.div_rem(&d).unwrap().unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree().is_none_or(|rd| rd < 2));
    }

    #[test]
    fn vanishing_examples() {
        let a = poly(&[1, 1, 1, 1]);
        assert!(vanishes_at_root_of_unity(&a, 4, 1).unwrap());
        assert!(!vanishes_at_root_of_unity(&a, 4, 0).unwrap());
        assert!(vanishes_at_root_of_unity(&poly(&[1, 0, 1]), 8, 2).unwrap());
        assert!(vanishes_at_root_of_unity(&a, 4, -1).unwrap());
        assert!(vanishes_at_root_of_unity(&a, 4, 7).unwrap());
        assert!(!vanishes_at_root_of_unity(&a, 8, 1).unwrap());
        assert!(vanishes_at_root_of_unity(&IntPoly::zero(), 5, 1).unwrap());
    }

    #[test]
    fn mask_fast_path_matches_general() {
        let exps = [0u64, 3, 4, 9, 11];
        let p = mask_polynomial(&set(&exps)).unwrap();
        for s in 1..40 {
            assert_eq!(
                cyclotomic_divides_mask(s, exps.iter().copied()).unwrap(),
                divides(&cyclotomic(s).unwrap(), &p).unwrap(),
                "s = {s}"
            );
        }
    }

    #[test]
    fn int_set_parsing() {
        assert_eq!("0,1,2,3".parse::<IntSet>().unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(" 3, 0 ".parse::<IntSet>().unwrap(), set(&[0, 3]));
        assert!("0,,2".parse::<IntSet>().is_err());
        assert!("0,-1".parse::<IntSet>().is_err());
        assert!("".parse::<IntSet>().is_err());
        assert_eq!("1,1".parse::<IntSet>(), Err(Error::DuplicateElement(1)));
    }

    #[test]
    fn display() {
        assert_eq!(cyclotomic(6).unwrap().to_string(), "1 - x + x^2");
        assert_eq!(cyclotomic(1).unwrap().to_string(), "-1 + x");
        assert_eq!(poly(&[0, 0, 3]).to_string(), "3x^2");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn canonicalize_translates_to_zero() {
        let (c, shift) = set(&[3, 5, 9]).canonicalize();
        assert_eq!(c, set(&[0, 2, 6]));
        assert_eq!(shift, 3);
        assert!(c.is_canonical());
    }
}
