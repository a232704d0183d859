use thiserror::Error;

/// Errors raised while building or interrogating a group.
#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the construction cap of {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("group order {order} exceeds the lattice cap of {cap}")]
    LatticeCapExceeded { order: usize, cap: usize },

    #[error("invalid descriptor `{descriptor}`: {reason}")]
    Descriptor { descriptor: String, reason: String },

    #[error("table shape mismatch: {0}")]
    Shape(String),

    #[error("entry {value} at row {row}, column {col} is not an element index")]
    OutOfRange { row: usize, col: usize, value: usize },

    #[error(
        "not a Latin square: {axis} {index} repeats element {value} (first at position {first}, again at {second})"
    )]
    NotLatin {
        axis: &'static str,
        index: usize,
        value: usize,
        first: usize,
        second: usize,
    },

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("element set is not a subgroup ({0})")]
    NotSubgroup(&'static str),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group of order {order} is not a p-group")]
    NotPGroup { order: usize },

    #[error("not a permutation: {0}")]
    NotPermutation(String),

    #[error("homomorphism check failed: {0}")]
    Homomorphism(String),

    #[error("file format error: {0}")]
    Format(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
