//! Equivariant partition complexes, tree posets and spaces of measured trees
//! for finite permutation groups, with exact integral homology.

pub mod error;
pub mod gset;
pub mod guards;
pub mod homology;
pub mod lie;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod poset;
pub mod quillen;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};

/// Exact rationals used for lengths, coordinates and characters.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Sparse integer matrix used for boundary maps.
pub type IntegerMatrix = linalg::SparseMatrix<Integer>;
/// Dense rational matrix used for homology actions.
pub type RationalMatrix = linalg::DenseMatrix<Rational>;
