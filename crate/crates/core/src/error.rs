use alloc::string::String;

use crate::exact::Field;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("denominator vanishes modulo {0}")]
    DenominatorVanishes(u32),
    #[error("cannot move a scalar of {0} into {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported root system label `{0}`")]
    UnsupportedLabel(String),
    #[error("malformed root `{0}`")]
    MalformedRoot(String),
    #[error("`{0}` is not a root of this system")]
    NotARoot(String),
    #[error("reflection in the zero vector")]
    ZeroRoot,
    #[error("the root system is reducible")]
    ReducibleSystem,
    #[error("not a crystallographic system: {0}")]
    NotCrystallographic(String),

    #[error("group order exceeds the guard of {limit} elements")]
    OrderGuard { limit: usize },
    #[error("malformed word `{0}`")]
    MalformedWord(String),

    #[error("root `{0}` is not positive")]
    NotPositive(String),
    #[error("root set is not additively closed")]
    NotAdditivelyClosed,
    #[error("not a simple system: {0}")]
    NotASimpleSystem(String),
    #[error("permutation is not a diagram symmetry")]
    NotASymmetry,
    #[error("folding an orbit whose component is not simply laced")]
    NotSimplyLaced,
    #[error("malformed generator `{0}`")]
    MalformedGenerator(String),
    #[error("{0}")]
    ModeMismatch(String),

    #[error("containment precondition violated: {0}")]
    ContainmentViolated(String),
    #[error("the pair is not useful")]
    NotUseful,
    #[error("group action does not preserve the module span")]
    SpanNotPreserved,

    #[error("class representatives are not in distinct classes")]
    ClassesNotDistinct,
    #[error("character has a non-integral decomposition")]
    NonIntegralDecomposition,
    #[error("character length {got} does not match {expected} classes")]
    ClassCountMismatch { expected: usize, got: usize },
    #[error("character table check failed: {0}")]
    TableCheck(String),
}
