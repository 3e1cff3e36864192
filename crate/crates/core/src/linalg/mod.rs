//! Self-contained numerical kernels used by the three solvers.

pub mod dense;
pub mod fornberg;
pub mod generalized;
pub mod nonsym;
pub mod quadrature;
pub mod tridiag;

pub use dense::{sym_eigen_dense, DenseMatrix, Lu};
pub use fornberg::{fornberg_weights, StencilWeights};
pub use generalized::{cholesky, generalized_sym_eigen, SymMatrix};
pub use nonsym::{dense_eigen, real_eigenvector};
pub use quadrature::{gauss_laguerre, integrate, integrate_to_infinity, QuadratureRule};
pub use tridiag::{symtri_eigen, TridiagonalSymmetric};

/// Symmetric eigen-decomposition; eigenvector `k` is column `k` of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen<T> {
    pub values: Vec<T>,
    pub vectors: Option<DenseMatrix<T>>,
}
