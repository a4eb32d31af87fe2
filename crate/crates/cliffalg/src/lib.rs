//! Exact-arithmetic Clifford algebras, the Lie algebras living inside them,
//! and the classification bookkeeping built on top: module decompositions,
//! Zariski-closure computations for spin(n,1) homomorphisms, and verifiers
//! for the stored classification tables.

pub mod scalar;
pub mod sparse;
pub mod subspace;
pub mod clifford;
pub mod lie;
pub mod spinor;
pub mod repdecomp;
pub mod gphi;
pub mod catalog;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("incomplete decomposition: hinted eigenvalues cover {found} of {expected} dimensions")]
    IncompleteDecomposition { expected: usize, found: usize },
    #[error("eigenvalue outside the supported lattice: {0}")]
    UnsupportedEigenvalue(String),
    #[error("unsupported signature ({0},{1})")]
    UnsupportedSignature(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
