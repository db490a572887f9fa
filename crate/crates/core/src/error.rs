use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground sets differ: [{0}] vs [{1}]")]
    SizeMismatch(usize, usize),

    #[error("not a permutation of [0, {n}]: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("not a full cycle: {0}")]
    NotFullCycle(String),

    #[error("invalid transposition ({0} {1})")]
    InvalidTransposition(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not unimodal")]
    NotUnimodal(String),

    #[error("{0} is unimodal, so no witness exists")]
    Unimodal(String),

    #[error("not a parking function: {0}")]
    NotParking(String),

    #[error("not a major sequence: {0}")]
    NotMajor(String),

    #[error("invalid labelled Dyck path: {0}")]
    InvalidPath(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("not a minimal factorization of a full cycle: {0}")]
    NotMinimal(String),

    #[error("factor {k} of {factorization} is not (0 {n})")]
    NotSimpleAt {
        k: usize,
        n: usize,
        factorization: String,
    },

    #[error("invalid arch diagram: {0}")]
    InvalidArch(String),

    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("polynomial is not divisible by {0}")]
    NotDivisible(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
