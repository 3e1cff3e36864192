//! Symmetric-definite generalized eigenproblem `H v = λ Ω v` by Cholesky
//! reduction to a standard symmetric problem.

use crate::error::{Result, SpectraError};
use crate::linalg::dense::{sym_eigen_dense, DenseMatrix};
use crate::linalg::tridiag::{symtri_eigen, TridiagonalSymmetric};
use crate::linalg::SymEigen;
use crate::scalar::Real;

/// Symmetric matrix in whichever storage the caller has.
#[derive(Debug, Clone, PartialEq)]
pub enum SymMatrix<T> {
    Diagonal(Vec<T>),
    Tridiagonal(TridiagonalSymmetric<T>),
    Dense(DenseMatrix<T>),
}

impl<T: Real> SymMatrix<T> {
    pub fn dim(&self) -> usize {
        match self {
            SymMatrix::Diagonal(d) => d.len(),
            SymMatrix::Tridiagonal(t) => t.dim(),
            SymMatrix::Dense(m) => m.dim(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        match self {
            SymMatrix::Diagonal(d) => DenseMatrix::from_diagonal(d),
            SymMatrix::Tridiagonal(t) => t.to_dense(),
            SymMatrix::Dense(m) => m.clone(),
        }
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        match self {
            SymMatrix::Diagonal(d) => d.iter().zip(x).map(|(&a, &b)| a * b).collect(),
            SymMatrix::Tridiagonal(t) => t.matvec(x),
            SymMatrix::Dense(m) => m.matvec(x),
        }
    }

    pub fn frobenius_norm(&self) -> T {
        match self {
            SymMatrix::Diagonal(d) => d.iter().fold(T::zero(), |a, &v| a + v * v).sqrt(),
            SymMatrix::Tridiagonal(t) => t.frobenius_norm(),
            SymMatrix::Dense(m) => m.frobenius_norm(),
        }
    }

    pub fn scaled(&self, c: T) -> Self {
        match self {
            SymMatrix::Diagonal(d) => SymMatrix::Diagonal(d.iter().map(|&v| v * c).collect()),
            SymMatrix::Tridiagonal(t) => SymMatrix::Tridiagonal(t.scaled(c)),
            SymMatrix::Dense(m) => {
                let mut m = m.clone();
                m.as_mut_slice().iter_mut().for_each(|v| *v = *v * c);
                SymMatrix::Dense(m)
            }
        }
    }

    /// Eigenvalues of the matrix itself, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        match self {
            SymMatrix::Diagonal(d) => {
                let mut v = d.clone();
                v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
                Ok(v)
            }
            SymMatrix::Tridiagonal(t) => Ok(symtri_eigen(t, false)?.values),
            SymMatrix::Dense(m) => Ok(sym_eigen_dense(m, false)?.values),
        }
    }
}

/// Lower Cholesky factor `L` with `Ω = L Lᵀ`.
pub fn cholesky<T: Real>(omega: &SymMatrix<T>) -> Result<DenseMatrix<T>> {
    let a = omega.to_dense();
    let n = a.dim();
    let mut l = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut s = a[(j, j)];
        for k in 0..j {
            s = s - l[(j, k)] * l[(j, k)];
        }
        if !(s > T::zero()) || !s.is_finite() {
            return Err(SpectraError::NotPositiveDefinite {
                pivot: j,
                size: n,
                advice: "overlap matrix lost definiteness; raise the quadrature order or check the basis parameters"
                    .to_string(),
            });
        }
        let d = s.sqrt();
        l[(j, j)] = d;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Ok(l)
}

fn forward_solve_in_place<T: Real>(l: &DenseMatrix<T>, b: &mut [T]) {
    for i in 0..l.dim() {
        let mut s = b[i];
        for k in 0..i {
            s = s - l[(i, k)] * b[k];
        }
        b[i] = s / l[(i, i)];
    }
}

fn backward_transpose_solve_in_place<T: Real>(l: &DenseMatrix<T>, b: &mut [T]) {
    let n = l.dim();
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in (i + 1)..n {
            s = s - l[(k, i)] * b[k];
        }
        b[i] = s / l[(i, i)];
    }
}

/// All eigenpairs of `H v = λ Ω v` with `Ω` positive definite. Eigenvalues are
/// ascending; returned vectors are Ω-orthonormal.
pub fn generalized_sym_eigen<T: Real>(
    h: &SymMatrix<T>,
    omega: &SymMatrix<T>,
    want_vectors: bool,
) -> Result<SymEigen<T>> {
    let n = h.dim();
    if omega.dim() != n {
        return Err(SpectraError::InvalidParameter(format!(
            "H is {n}×{n} but Ω is {0}×{0}",
            omega.dim()
        )));
    }
    let l = cholesky(omega)?;
    let hd = h.to_dense();
    // X = L⁻¹ H, column by column
    let mut x = DenseMatrix::zeros(n);
    let mut col = vec![T::zero(); n];
    for j in 0..n {
        for i in 0..n {
            col[i] = hd[(i, j)];
        }
        forward_solve_in_place(&l, &mut col);
        for i in 0..n {
            x[(i, j)] = col[i];
        }
    }
    // C = L⁻¹ Xᵀ = L⁻¹ H L⁻ᵀ
    let mut c = DenseMatrix::zeros(n);
    for j in 0..n {
        for i in 0..n {
            col[i] = x[(j, i)];
        }
        forward_solve_in_place(&l, &mut col);
        for i in 0..n {
            c[(i, j)] = col[i];
        }
    }
    c.symmetrize();
    let eig = sym_eigen_dense(&c, want_vectors)?;
    let vectors = eig.vectors.map(|w| {
        let mut v = DenseMatrix::zeros(n);
        for k in 0..n {
            let mut y = w.column(k);
            backward_transpose_solve_in_place(&l, &mut y);
            for i in 0..n {
                v[(i, k)] = y[i];
            }
        }
        v
    });
    Ok(SymEigen {
        values: eig.values,
        vectors,
    })
}
