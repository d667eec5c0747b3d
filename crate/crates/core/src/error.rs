use thiserror::Error;

/// Syntax error in block notation, located by byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("block notation: {message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("distance set must be nonempty")]
    EmptySet,
    #[error("distances must be positive integers (got {0})")]
    NonPositive(i64),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("expansion would produce {len} blocks, above the cap of {cap}")]
    ExpansionTooLarge { len: u128, cap: usize },
    #[error("{what}: {needed} exceeds the limit of {limit}")]
    ResourceCap { what: &'static str, needed: u128, limit: u128 },
    #[error("node budget exhausted")]
    BudgetExhausted,
    #[error("state graph has no cycle")]
    NoCycle,
    #[error("unknown family `{0}`")]
    UnknownFamily(alloc::string::String),
    #[error("parameter error: {0}")]
    Parameter(alloc::string::String),
    #[error("value is not known exactly (bounds {lower} .. {upper})")]
    Inexact { lower: crate::Rational, upper: crate::Rational },
}
