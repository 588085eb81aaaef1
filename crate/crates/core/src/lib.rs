//! Exact-arithmetic toolkit for tiles and spectral sets of the integers,
//! of cyclic groups and of rational step sets on the line.
//!
//! Everything in the verdict path is exact: polynomials have arbitrary
//! precision integer coefficients, vanishing at roots of unity is decided by
//! cyclotomic divisibility, and step-set endpoints are rationals.

pub mod arith;
pub mod bits;
pub mod cm;
pub mod error;
pub mod lift;
pub mod poly;
pub mod rational;
pub mod report;
pub mod search;
pub mod stepset;
pub mod verify;

pub use cm::{analyze, cm_tiling_set, laba_spectrum, minimal_period, CmAnalysis, PrimePower, RationalSpectrum, TilingSet};
pub use error::{Error, Result};
pub use poly::{cyclotomic, divides, mask_polynomial, vanishes_at_root_of_unity, IntPoly, IntSet};
pub use rational::Fraction;
pub use verify::{is_spectral_pair_zn, is_spectrum_z, is_tiling_z, is_tiling_zn, Certificate, Witness, ZnSubset};
