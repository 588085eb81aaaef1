use thiserror::Error;

use crate::stepset::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty set")]
    EmptySet,
    #[error("cyclotomic index must be at least 1")]
    InvalidIndex,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("duplicate element {0}")]
    DuplicateElement(u64),
    #[error("element {element} is out of range for Z_{modulus}")]
    OutOfRange { element: u64, modulus: u64 },
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("cardinality mismatch: expected {expected}, found {found}")]
    CardinalityMismatch { expected: usize, found: usize },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("empty spectrum")]
    EmptySpectrum,
    #[error("rational {0} is outside [0, 1)")]
    NotInUnitInterval(String),
    #[error("spectrum element {0} is not rational")]
    IrrationalUnsupported(String),
    #[error("product polynomial has coefficient {coefficient} at degree {degree}")]
    NonBinaryCoefficients { degree: usize, coefficient: String },
    #[error("survey size {n} exceeds ceiling {ceiling}")]
    CeilingExceeded { n: u64, ceiling: u64 },
    #[error("step set has measure {0}, expected 1")]
    NotNormalized(String),
    #[error("step set is not a {p}-tile: fiber of size {} on {cell}", fiber.len())]
    NotPTile { p: u64, cell: Cell, fiber: Vec<i64> },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("empty interval [{0}, {1})")]
    EmptyInterval(String, String),
    #[error("empty family")]
    EmptyFamily,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
