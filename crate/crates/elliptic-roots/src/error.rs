use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0:?} is not a pair of divisors of 8")]
    InvalidModulus((u8, u8)),

    #[error("residue {residue:?} out of range for modulus {modulus:?}")]
    ResidueOutOfRange { residue: (u8, u8), modulus: (u8, u8) },

    #[error("matrix has determinant {det}, expected +1 or -1")]
    NonUnimodular { det: i64 },

    #[error("rank must be at least 1, got {0}")]
    InvalidRank(u32),

    #[error("type {name} is not admissible at rank {rank}: {constraint}")]
    InadmissibleType {
        name: String,
        rank: u32,
        constraint: String,
    },

    #[error("unknown type name {0:?}")]
    UnknownType(String),

    #[error("set needs working modulus {required}, only {supported} is supported here")]
    ModulusOverflow { required: u8, supported: u8 },

    #[error("search space too large: {0}")]
    SearchSpace(String),

    #[error("invalid descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
