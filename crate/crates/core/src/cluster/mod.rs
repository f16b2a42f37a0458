//! Seeds, exchange matrices and mutation, structural predicates, bounded
//! exploration of the mutation class and the named example seeds.
//!
//! Indices are zero-based throughout the library; `x1` is index 0.

pub mod builtin;
mod enumerate;
mod hypersurface;
mod matrix;
mod seed;
pub mod seed_file;

use thiserror::Error;

pub use builtin::{builtin_matrix, builtin_seed, Builtin};
pub use enumerate::{enumerate_cluster_variables, Enumeration, Exploration};
pub use hypersurface::{hypersurface_polynomial, hypersurface_relation_check};
pub use matrix::{
    check_shape, mutate_matrix, skew_symmetrizer, structure_report, ExchangeMatrix, Quiver, SkewSymmetrizer,
    StructureReport,
};
pub use seed::{exchange_exponents, exchange_polynomial, laurent_check, mutate_seed, LaurentCheck, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("malformed exchange matrix: {0}")]
    Shape(String),
    #[error("diagonal entry b[{index}][{index}] must be zero")]
    NonZeroDiagonal { index: usize },
    #[error("principal part is not skew-symmetrizable (entries b[{i}][{j}] and b[{j}][{i}])")]
    NotSkewSymmetrizable { i: usize, j: usize },
    #[error("index {index} is not mutable (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("exchange at index {index} left the Laurent ring: {detail}")]
    LaurentViolation { index: usize, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
