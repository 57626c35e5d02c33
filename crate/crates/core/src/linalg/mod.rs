//! Exact sparse and dense linear algebra.

mod echelon;
mod snf;
mod sparse;

pub use echelon::{axpy, kernel_basis, rank, DenseMatrix, EchelonBasis, SparseVec};
pub use snf::{
    smith_normal_form, smith_normal_form_exact, smith_with_transforms, SmithDecomposition,
    SmithForm,
};
pub use sparse::SparseMatrix;
