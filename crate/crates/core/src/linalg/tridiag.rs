use crate::error::{invalid, Result, SpectraError};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::SymEigen;
use crate::scalar::{lit, Real};

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSymmetric<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> TridiagonalSymmetric<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(invalid("tridiagonal matrix needs at least one row"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(invalid(format!(
                "off-diagonal length {} inconsistent with diagonal length {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(offdiag.iter()).any(|v| !v.is_finite()) {
            return Err(invalid("tridiagonal entries must be finite"));
        }
        Ok(Self { diag, offdiag })
    }

    pub(crate) fn from_parts_unchecked(diag: Vec<T>, offdiag: Vec<T>) -> Self {
        Self { diag, offdiag }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            diag: self.diag.iter().map(|&d| d * c).collect(),
            offdiag: self.offdiag.iter().map(|&e| e * c).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut m = DenseMatrix::from_diagonal(&self.diag);
        for (i, &e) in self.offdiag.iter().enumerate() {
            m[(i, i + 1)] = e;
            m[(i + 1, i)] = e;
        }
        m
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s = s + self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s = s + self.offdiag[i] * x[i + 1];
                }
                s
            })
            .collect()
    }

    pub fn frobenius_norm(&self) -> T {
        let d = self.diag.iter().fold(T::zero(), |a, &v| a + v * v);
        let e = self.offdiag.iter().fold(T::zero(), |a, &v| a + v * v);
        (d + lit::<T>(2.0) * e).sqrt()
    }

    pub fn trace(&self) -> T {
        self.diag.iter().copied().sum()
    }
}

const QL_MAX_SWEEPS: usize = 60;

/// Eigenvalues (ascending) and optionally orthonormal eigenvectors.
pub fn symtri_eigen<T: Real>(
    t: &TridiagonalSymmetric<T>,
    want_vectors: bool,
) -> Result<SymEigen<T>> {
    let z = if want_vectors {
        Some(DenseMatrix::identity(t.dim()))
    } else {
        None
    };
    tridiagonal_ql(t.diag(), t.offdiag(), z)
}

/// Implicit QL with Wilkinson-type shifts. When `z` is given, the rotations are
/// accumulated into it column-wise, so passing the Householder `Q` of a dense
/// reduction yields eigenvectors of the original matrix.
pub(crate) fn tridiagonal_ql<T: Real>(
    diag: &[T],
    offdiag: &[T],
    mut z: Option<DenseMatrix<T>>,
) -> Result<SymEigen<T>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e: Vec<T> = offdiag.to_vec();
    e.push(T::zero());
    let two = lit::<T>(2.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_SWEEPS {
                return Err(SpectraError::NoConvergence {
                    routine: "tridiagonal QL",
                    iterations: QL_MAX_SWEEPS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_mut() {
                    for k in 0..n {
                        let zf = z[(k, i + 1)];
                        let zi = z[(k, i)];
                        z[(k, i + 1)] = s * zi + c * zf;
                        z[(k, i)] = c * zi - s * zf;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|z| {
        let mut v = DenseMatrix::zeros(n);
        for (new, &old) in order.iter().enumerate() {
            for k in 0..n {
                v[(k, new)] = z[(k, old)];
            }
        }
        v
    });
    Ok(SymEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
        let mut q = d[0] - x;
        let mut count = usize::from(q < 0.0);
        for i in 1..d.len() {
            let denom = if q == 0.0 { 1e-300 } else { q };
            q = d[i] - x - e[i - 1] * e[i - 1] / denom;
            count += usize::from(q < 0.0);
        }
        count
    }

    fn bisection_eigenvalues(d: &[f64], e: &[f64]) -> Vec<f64> {
        let bound = d
            .iter()
            .enumerate()
            .map(|(i, &di)| {
                let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
                let right = if i < e.len() { e[i].abs() } else { 0.0 };
                di.abs() + left + right
            })
            .fold(0.0, f64::max);
        (0..d.len())
            .map(|k| {
                let (mut lo, mut hi) = (-bound - 1.0, bound + 1.0);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if sturm_count(d, e, mid) > k {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }

    #[test]
    fn one_by_one() {
        let t = TridiagonalSymmetric::new(vec![3.5], vec![]).unwrap();
        let eig = symtri_eigen(&t, true).unwrap();
        assert_eq!(eig.values, vec![3.5]);
    }

    #[test]
    fn two_by_two() {
        let t = TridiagonalSymmetric::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        let eig = symtri_eigen(&t, false).unwrap();
        assert_relative_eq!(eig.values[0], -1.0, epsilon = 1e-15);
        assert_relative_eq!(eig.values[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn inconsistent_lengths_rejected() {
        assert!(TridiagonalSymmetric::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalSymmetric::<f64>::new(vec![], vec![]).is_err());
        assert!(TridiagonalSymmetric::new(vec![1.0, f64::INFINITY], vec![0.0]).is_err());
    }

    #[test]
    fn random_matches_sturm_bisection() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let d: Vec<f64> = (0..8).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let e: Vec<f64> = (0..7).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let t = TridiagonalSymmetric::new(d.clone(), e.clone()).unwrap();
            let eig = symtri_eigen(&t, true).unwrap();
            let oracle = bisection_eigenvalues(&d, &e);
            for (a, b) in eig.values.iter().zip(&oracle) {
                assert_relative_eq!(*a, *b, epsilon = 1e-9);
            }
            let v = eig.vectors.unwrap();
            let norm = t.frobenius_norm();
            for k in 0..8 {
                let x = v.column(k);
                let tx = t.matvec(&x);
                let res: f64 = tx
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| (a - eig.values[k] * b).powi(2))
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-10 * norm);
                for j in 0..8 {
                    let y = v.column(j);
                    let dot: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
                    let want = if j == k { 1.0 } else { 0.0 };
                    assert!((dot - want).abs() < 1e-10);
                }
            }
            assert_relative_eq!(
                eig.values.iter().sum::<f64>(),
                t.trace(),
                epsilon = 1e-9 * norm
            );
        }
    }
}
