use thiserror::Error;

use crate::algebra::AxiomReport;
use crate::space::SpaceReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range for a carrier of {len} elements")]
    Index { index: usize, len: usize },

    #[error("order relation has a cycle through {0} and {1}")]
    Cycle(usize, usize),

    #[error("carrier must have at least one element")]
    EmptyCarrier,

    #[error("carrier of {0} elements exceeds the limit of {limit}", limit = crate::MAX_CARRIER)]
    TooLarge(usize),

    #[error("poset has no least or no greatest element")]
    NotBounded,

    #[error("elements {0} and {1} have no {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("algebra fails validation: {}", .0.summary())]
    InvalidAlgebra(Box<AxiomReport>),

    #[error("space fails validation: {}", .0.summary())]
    InvalidSpace(Box<SpaceReport>),

    #[error("map is not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("partition is not compatible with {op}: {a} ~ {b} but their images differ")]
    NotACongruence {
        a: usize,
        b: usize,
        op: &'static str,
    },

    #[error("congruence family is not closed: {0}")]
    NotClosed(String),

    #[error("subset {0:#x} is not a tms-subset")]
    NotATmsSubset(u64),

    #[error("size guard: {what} has {size} elements, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Semantic(String),
}
