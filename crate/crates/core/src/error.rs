use alloc::string::String;

use crate::series::Var;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("variable sets do not match")]
    VarSetMismatch,
    #[error("variable {0} is not part of the variable set")]
    UnknownVariable(Var),
    #[error("exponent outside the truncation caps")]
    OutOfCap,
    #[error("series in {0} has a nonzero constant term")]
    NonZeroConstantTerm(&'static str),
    #[error("parity violation: degree {degree} does not admit {insertions} stacky insertions")]
    ParityViolation { degree: u32, insertions: u32 },
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("auxiliary weight does not cancel: leftover power s^{0}/2")]
    AuxWeightNotCancelled(i32),
    #[error("zero weight in a localization denominator")]
    ZeroWeight,
    #[error("linear part is singular")]
    SingularLinearPart,
    #[error("phase is not a 12th root of unity")]
    NotARootOfUnity,
    #[error("unsupported change of variables: {0}")]
    Unsupported(String),
    #[error("exact division failed")]
    InexactDivision,
}

pub type Result<T> = core::result::Result<T, Error>;
