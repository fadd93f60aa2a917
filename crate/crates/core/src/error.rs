use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unstable moduli space: genus 0 with {0} markings")]
    Unstable(usize),

    /// The modular constraint on the weights fails; carries the congruence.
    #[error("class undefined for these parameters: {0}")]
    ModularConstraint(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("relation outside genus-0 stable range: {0}")]
    UnstableRelationTerm(String),

    #[error("boundedness fails ({0}); use the full relation instead")]
    BoundednessViolated(String),

    #[error("non-removable singularity: {0}")]
    NonRemovableSingularity(String),

    #[error("degree {degree} exceeds the symmetric-group cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },

    #[error("quasi-polynomiality violated: {0}")]
    QuasiPolynomiality(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
