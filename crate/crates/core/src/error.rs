use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("undeclared symbol `{name}` at {line}:{col}")]
    UndeclaredSymbol { name: String, line: usize, col: usize },
    #[error("bad jet index at {line}:{col}: {msg}")]
    BadJetIndex { line: usize, col: usize, msg: String },
    #[error("the system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("empty set of monomials")]
    EmptySet,
    #[error("ranking is not a block ranking with the requested block")]
    NotBlockRanking,
    #[error("ranking does not fit the query: {0}")]
    RankingMismatch(String),
    #[error("step limit of {0} exceeded")]
    StepLimit(usize),
    #[error("{0}")]
    Invalid(String),
}
