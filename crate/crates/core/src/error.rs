use alloc::string::String;

use crate::symcore::VarSet;

/// Errors raised by the structural, algebraic and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable sets differ: {left} vs {right}")]
    VarSetMismatch { left: VarSet, right: VarSet },
    #[error("variable {0} does not belong to the variable set")]
    UnknownVariable(String),
    #[error("operator of order {order} not supported here (maximum {max})")]
    UnsupportedOrder { order: usize, max: usize },
    #[error("substitution is not invertible over the integers")]
    NonInvertibleSubstitution,
    #[error("unbound symbol during numeric evaluation: {0}")]
    Unbound(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("rank {rank} outside the supported range {min}..={max}")]
    RankOutOfRange { rank: usize, min: usize, max: usize },
    #[error("chart coordinate {0} must be strictly positive")]
    NonPositiveChart(String),
    #[error("leading principal minor of size {0} vanishes; no Gauss decomposition")]
    SingularLeadingMinor(usize),
    #[error("finite-difference stencil lacks the value at offset {0}")]
    InsufficientStencil(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
