//! Exact rationals as they appear in machine output: always `"num/den"`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced rational number that serializes as the string `"num/den"`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(pub Rational64);

impl Fraction {
    pub fn new(num: i64, den: i64) -> Self {
        Fraction(Rational64::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Fraction(Rational64::from_integer(n))
    }

    pub fn zero() -> Self {
        Fraction(Rational64::zero())
    }

    pub fn one() -> Self {
        Fraction(Rational64::one())
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn in_unit_interval(&self) -> bool {
        self.0 >= Rational64::zero() && self.0 < Rational64::one()
    }
}

impl From<Rational64> for Fraction {
    fn from(r: Rational64) -> Self {
        Fraction(r)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"num/den"` in lowest terms with a positive denominator, or a bare
/// integer. Decimal notation is rejected: every spectrum here is rational and
/// must be given exactly.
impl FromStr for Fraction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('.') || s.contains('e') || s.contains('E') {
            return Err(Error::IrrationalUnsupported(s.to_string()));
        }
        let parse_int = |t: &str| -> Result<i64> {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        };
        match s.split_once('/') {
            None => Ok(Fraction::integer(parse_int(s)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d <= 0 {
                    return Err(Error::Parse(format!("denominator of {s:?} must be positive")));
                }
                let r = Rational64::new(n, d);
                if *r.denom() != d {
                    return Err(Error::Parse(format!("{s:?} is not in lowest terms")));
                }
                Ok(Fraction(r))
            }
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated list of fractions in `[0, 1)`.
pub fn parse_unit_fractions(s: &str) -> Result<Vec<Fraction>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty list of rationals".into()));
    }
    s.split(',')
        .map(|tok| {
            let f: Fraction = tok.parse()?;
            if !f.in_unit_interval() {
                return Err(Error::NotInUnitInterval(f.to_string()));
            }
            Ok(f)
        })
        .collect()
}
