use std::ops::{Index, IndexMut};

use crate::error::{invalid, Result};
use crate::linalg::tridiag::{tridiagonal_ql, TridiagonalSymmetric};
use crate::linalg::SymEigen;
use crate::scalar::{lit, Real};

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_diagonal(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Row-major data of length `n²`.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(invalid(format!(
                "expected {} entries for a {n}×{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(invalid("matrix entries must be finite"));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid("matrix must be square"));
        }
        Self::from_row_major(n, rows.concat())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> T {
        self.diagonal().into_iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }

    /// Largest absolute asymmetry `max |m_ij − m_ji|`.
    pub fn asymmetry(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Replaces the matrix with `(M + Mᵀ)/2`.
    pub fn symmetrize(&mut self) {
        let half = lit::<T>(0.5);
        for i in 0..self.n {
            for j in 0..i {
                let v = half * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = v;
                self[(j, i)] = v;
            }
        }
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Householder reduction `A = Q T Qᵀ` of a symmetric matrix. Only the lower
/// triangle is read. Returns the tridiagonal part and, when requested, `Q`.
pub fn householder_tridiagonalize<T: Real>(
    m: &DenseMatrix<T>,
    accumulate: bool,
) -> (TridiagonalSymmetric<T>, Option<DenseMatrix<T>>) {
    let n = m.dim();
    let mut a = m.clone();
    for i in 0..n {
        for j in 0..i {
            a[(j, i)] = a[(i, j)];
        }
    }
    let mut q = if accumulate {
        Some(DenseMatrix::identity(n))
    } else {
        None
    };
    let two = lit::<T>(2.0);
    let mut v = vec![T::zero(); n];
    let mut p = vec![T::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let alpha_sq = ((k + 1)..n).fold(T::zero(), |acc, i| acc + a[(i, k)] * a[(i, k)]);
        let tail_sq = alpha_sq - a[(k + 1, k)] * a[(k + 1, k)];
        if tail_sq == T::zero() {
            continue;
        }
        let alpha = alpha_sq.sqrt();
        let x0 = a[(k + 1, k)];
        let alpha = if x0 > T::zero() { -alpha } else { alpha };
        for i in 0..n {
            v[i] = T::zero();
        }
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = a[(i, k)];
        }
        let vnorm_sq = ((k + 1)..n).fold(T::zero(), |acc, i| acc + v[i] * v[i]);
        let beta = two / vnorm_sq;
        // p = β A v, restricted to the trailing block
        for i in k..n {
            let mut s = T::zero();
            for j in (k + 1)..n {
                s = s + a[(i, j)] * v[j];
            }
            p[i] = beta * s;
        }
        let kappa = lit::<T>(0.5) * beta * ((k + 1)..n).fold(T::zero(), |acc, i| acc + v[i] * p[i]);
        for i in k..n {
            p[i] = p[i] - kappa * v[i];
        }
        // A ← A − v pᵀ − p vᵀ
        for i in k..n {
            for j in k..n {
                a[(i, j)] = a[(i, j)] - v[i] * p[j] - p[i] * v[j];
            }
        }
        if let Some(q) = q.as_mut() {
            // Q ← Q (I − β v vᵀ)
            for i in 0..n {
                let mut s = T::zero();
                for j in (k + 1)..n {
                    s = s + q[(i, j)] * v[j];
                }
                let s = beta * s;
                for j in (k + 1)..n {
                    q[(i, j)] = q[(i, j)] - s * v[j];
                }
            }
        }
    }
    let diag = a.diagonal();
    let off = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)]).collect();
    (TridiagonalSymmetric::from_parts_unchecked(diag, off), q)
}

/// Eigen-decomposition of a dense symmetric matrix (lower triangle read).
pub fn sym_eigen_dense<T: Real>(m: &DenseMatrix<T>, want_vectors: bool) -> Result<SymEigen<T>> {
    let (tri, q) = householder_tridiagonalize(m, want_vectors);
    tridiagonal_ql(tri.diag(), tri.offdiag(), q)
}

/// LU factorization with partial pivoting, stored in place.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    lu: DenseMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    /// Factors `m`; exactly singular pivots are replaced by `tiny` so that
    /// shifted solves near an eigenvalue still produce a direction.
    pub fn factor(m: &DenseMatrix<T>, tiny: T) -> Self {
        let n = m.dim();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut piv = k;
            for i in (k + 1)..n {
                if lu[(i, k)].abs() > lu[(piv, k)].abs() {
                    piv = i;
                }
            }
            if piv != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = t;
                }
                perm.swap(k, piv);
            }
            if lu[(k, k)] == T::zero() {
                lu[(k, k)] = tiny;
            }
            let d = lu[(k, k)];
            for i in (k + 1)..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                if f != T::zero() {
                    for j in (k + 1)..n {
                        lu[(i, j)] = lu[(i, j)] - f * lu[(k, j)];
                    }
                }
            }
        }
        Self { lu, perm }
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.lu.dim();
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] = x[i] - self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] = x[i] - self.lu[(i, j)] * x[j];
            }
            x[i] = x[i] / self.lu[(i, i)];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample(n: usize) -> DenseMatrix<f64> {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = ((i * 7 + j * 3) % 11) as f64 - 5.0 + if i == j { 3.0 } else { 0.0 };
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }

    #[test]
    fn tridiagonalization_is_a_similarity() {
        let m = sample(7);
        let (t, q) = householder_tridiagonalize(&m, true);
        let q = q.unwrap();
        let rebuilt = q.matmul(&t.to_dense()).matmul(&q.transpose());
        for i in 0..7 {
            for j in 0..7 {
                assert!((rebuilt[(i, j)] - m[(i, j)]).abs() < 1e-12);
            }
        }
        let qtq = q.transpose().matmul(&q);
        for i in 0..7 {
            for j in 0..7 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((qtq[(i, j)] - e).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn dense_symmetric_eigenpairs() {
        let m = sample(9);
        let eig = sym_eigen_dense(&m, true).unwrap();
        let v = eig.vectors.as_ref().unwrap();
        let norm = m.frobenius_norm();
        for (k, &lambda) in eig.values.iter().enumerate() {
            let x = v.column(k);
            let mx = m.matvec(&x);
            let res = mx
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-10 * norm);
        }
        assert_relative_eq!(
            eig.values.iter().sum::<f64>(),
            m.trace(),
            epsilon = 1e-9 * norm
        );
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn lu_solves_linear_system() {
        let m = DenseMatrix::from_rows(&[
            vec![0.0, 2.0, 1.0],
            vec![1.0, 1.0, 0.0],
            vec![3.0, 0.0, 1.0],
        ])
        .unwrap();
        let lu = Lu::factor(&m, 1e-300);
        let x = lu.solve(&[5.0, 3.0, 6.0]);
        let back = m.matvec(&x);
        for (a, b) in back.iter().zip(&[5.0, 3.0, 6.0]) {
            assert_relative_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn rejects_non_square_and_non_finite() {
        assert!(DenseMatrix::<f64>::from_rows(&[vec![1.0, 2.0]]).is_err());
        assert!(DenseMatrix::from_row_major(1, vec![f64::NAN]).is_err());
    }
}
