use thiserror::Error;

use crate::rootsys::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("weight {0} is singular (orthogonal to some root)")]
    Singular(Weight),

    #[error("exterior degree {0} out of range 0..=6")]
    DegreeOutOfRange(usize),

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("Laurent division is not exact: {0}")]
    InexactDivision(String),

    #[error("root {0} is not compact")]
    NotCompact(Weight),

    #[error("malformed wedge index: {0}")]
    MalformedIndex(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("weight {weight} has multiplicity {mult} in the ambient space, expected 1")]
    Multiplicity { weight: Weight, mult: i64 },

    #[error("unsupported projection target {0}")]
    UnsupportedTarget(Weight),

    #[error("invalid Satake data: {0}")]
    InvalidSatake(String),

    #[error("local factor at prime {prime} has a pole at s = {s}")]
    Pole { prime: u64, s: f64 },

    #[error("invalid Hodge numbers: {0}")]
    InvalidHodge(String),

    #[error("point z = {re}{im:+}i lies outside the admissible annulus")]
    TruncationZone { re: f64, im: f64 },

    #[error("quadrature did not converge: {0}")]
    NotConverged(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}
