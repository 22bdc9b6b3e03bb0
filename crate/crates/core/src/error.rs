use thiserror::Error;

use crate::exprio::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: cannot combine {0:?} and {1:?} elements")]
    RingMismatch(crate::ncalg::Ring, crate::ncalg::Ring),
    #[error("magnetic index 2m={twice_m} is not valid for spin 2j={twice_j}")]
    InvalidMagnetic { twice_j: u32, twice_m: i32 },
    #[error("spins 2j1={0}, 2j2={1}, 2j={2} violate the triangle condition")]
    Triangle(u32, u32, u32),
    #[error("the Jacobi-polynomial form is only valid in the SL ring")]
    JacobiOnGl,
    #[error("Jacobi parameter alpha={0} must be non-negative")]
    NegativeAlpha(i64),
    #[error("the boson realization does not realize the SL quotient")]
    SlEvaluation,
    #[error("polynomial is not homogeneous; cannot map to a single grade")]
    Inhomogeneous,
    #[error("grade {0} is not available in this Fock window")]
    GradeOutOfRange(u32),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("decode error: {0}")]
    Decode(String),
}
