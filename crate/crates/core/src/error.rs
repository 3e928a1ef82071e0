use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix has rank {rank}, fewer than the {wanted} requested independent columns")]
    RankDeficient { rank: usize, wanted: usize },

    #[error("linear system has no solution")]
    Inconsistent,

    #[error("linear system has no unique solution")]
    Underdetermined,

    #[error("vector is not in the lattice")]
    NotInLattice,

    #[error("zero vector has no orientation")]
    ZeroVector,

    #[error("order is not a term order for this lattice")]
    NotTermOrder,

    #[error("lattice is not pointed")]
    NotPointed,

    #[error("completion exceeded the safety cap of {cap} elements")]
    SafetyCap { cap: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
