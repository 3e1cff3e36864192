//! Eigenvalues of a dense real nonsymmetric matrix: diagonal balancing,
//! reduction to upper Hessenberg form by stabilized elimination, then the
//! Francis double-shift QR iteration.

use num_complex::Complex;

use crate::error::{Result, SpectraError};
use crate::linalg::dense::{DenseMatrix, Lu};
use crate::scalar::{lit, Real};

/// Total QR sweeps allowed per matrix row, shared across all eigenvalues.
const QR_SWEEPS_PER_ROW: usize = 30;

/// Scales rows and columns by powers of two so that their off-diagonal norms
/// are comparable. Eigenvalues are unchanged.
pub fn balance<T: Real>(a: &mut DenseMatrix<T>) {
    let n = a.dim();
    let radix = lit::<T>(2.0);
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = T::zero();
            let mut r = T::zero();
            for j in 0..n {
                if j != i {
                    c = c + a[(j, i)].abs();
                    r = r + a[(i, j)].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f = f * radix;
                c = c * sqrdx;
            }
            g = r * radix;
            while c > g {
                f = f / radix;
                c = c / sqrdx;
            }
            if (c + r) / f < lit::<T>(0.95) * s {
                done = false;
                let ginv = T::one() / f;
                for j in 0..n {
                    a[(i, j)] = a[(i, j)] * ginv;
                }
                for j in 0..n {
                    a[(j, i)] = a[(j, i)] * f;
                }
            }
        }
    }
}

/// Reduces `a` to upper Hessenberg form in place (entries below the
/// subdiagonal are zeroed).
pub fn hessenberg<T: Real>(a: &mut DenseMatrix<T>) {
    let n = a.dim();
    for m in 1..n.saturating_sub(1) {
        let mut x = T::zero();
        let mut piv = m;
        for j in m..n {
            if a[(j, m - 1)].abs() > x.abs() {
                x = a[(j, m - 1)];
                piv = j;
            }
        }
        if piv != m {
            for j in (m - 1)..n {
                let t = a[(piv, j)];
                a[(piv, j)] = a[(m, j)];
                a[(m, j)] = t;
            }
            for j in 0..n {
                let t = a[(j, piv)];
                a[(j, piv)] = a[(j, m)];
                a[(j, m)] = t;
            }
        }
        if x == T::zero() {
            continue;
        }
        for i in (m + 1)..n {
            let mut y = a[(i, m - 1)];
            if y == T::zero() {
                continue;
            }
            y = y / x;
            a[(i, m - 1)] = T::zero();
            {
                let data = a.as_mut_slice();
                let (head, tail) = data.split_at_mut(i * n);
                let row_m = &head[m * n..(m + 1) * n];
                let row_i = &mut tail[..n];
                for j in m..n {
                    row_i[j] = row_i[j] - y * row_m[j];
                }
            }
            for j in 0..n {
                a[(j, m)] = a[(j, m)] + y * a[(j, i)];
            }
        }
    }
}

/// All eigenvalues of an upper Hessenberg matrix; `h` is destroyed.
pub fn hessenberg_eigenvalues<T: Real>(h: &mut DenseMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = h.dim();
    let mut wr = vec![T::zero(); n];
    let mut wi = vec![T::zero(); n];
    if n == 0 {
        return Ok(Vec::new());
    }
    let dim = n;
    let data = h.as_mut_slice();
    // 1-based indexing keeps the iteration close to its usual statement
    macro_rules! a {
        ($i:expr, $j:expr) => {
            data[($i - 1) * dim + ($j - 1)]
        };
    }

    let mut anorm = T::zero();
    for i in 1..=n {
        for j in (if i > 1 { i - 1 } else { 1 })..=n {
            anorm = anorm + a!(i, j).abs();
        }
    }
    let half = lit::<T>(0.5);
    let budget = QR_SWEEPS_PER_ROW * n.max(10);
    let mut sweeps = 0;
    let mut nn = n;
    let mut t = T::zero();
    let (mut p, mut q, mut r);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a!(l - 1, l - 1).abs() + a!(l, l).abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a!(l, l - 1).abs() <= T::epsilon() * s {
                    a!(l, l - 1) = T::zero();
                    break;
                }
                l -= 1;
            }
            x = a!(nn, nn);
            if l == nn {
                wr[nn - 1] = x + t;
                wi[nn - 1] = T::zero();
                nn -= 1;
            } else {
                y = a!(nn - 1, nn - 1);
                w = a!(nn, nn - 1) * a!(nn - 1, nn);
                if l == nn - 1 {
                    p = half * (y - x);
                    q = p * p + w;
                    z = q.abs().sqrt();
                    x = x + t;
                    if q >= T::zero() {
                        z = p + if p >= T::zero() { z } else { -z };
                        wr[nn - 2] = x + z;
                        wr[nn - 1] = x + z;
                        if z != T::zero() {
                            wr[nn - 1] = x - w / z;
                        }
                        wi[nn - 2] = T::zero();
                        wi[nn - 1] = T::zero();
                    } else {
                        wr[nn - 2] = x + p;
                        wr[nn - 1] = x + p;
                        wi[nn - 2] = -z;
                        wi[nn - 1] = z;
                    }
                    nn -= 2;
                } else {
                    if sweeps == budget {
                        return Err(SpectraError::NoConvergence {
                            routine: "Hessenberg QR",
                            iterations: budget,
                        });
                    }
                    sweeps += 1;
                    if its > 0 && its % 10 == 0 {
                        // exceptional shift
                        t = t + x;
                        for i in 1..=nn {
                            a!(i, i) = a!(i, i) - x;
                        }
                        let s = a!(nn, nn - 1).abs() + a!(nn - 1, nn - 2).abs();
                        x = lit::<T>(0.75) * s;
                        y = x;
                        w = lit::<T>(-0.4375) * s * s;
                    }
                    its += 1;
                    let mut m = nn - 2;
                    loop {
                        z = a!(m, m);
                        r = x - z;
                        let s = y - z;
                        p = (r * s - w) / a!(m + 1, m) + a!(m, m + 1);
                        q = a!(m + 1, m + 1) - z - r - s;
                        r = a!(m + 2, m + 1);
                        let s = p.abs() + q.abs() + r.abs();
                        p = p / s;
                        q = q / s;
                        r = r / s;
                        if m == l {
                            break;
                        }
                        let u = a!(m, m - 1).abs() * (q.abs() + r.abs());
                        let v =
                            p.abs() * (a!(m - 1, m - 1).abs() + z.abs() + a!(m + 1, m + 1).abs());
                        if u <= T::epsilon() * v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nn {
                        a!(i, i - 2) = T::zero();
                        if i != m + 2 {
                            a!(i, i - 3) = T::zero();
                        }
                    }
                    let mut k = m;
                    while k + 1 <= nn {
                        if k != m {
                            p = a!(k, k - 1);
                            q = a!(k + 1, k - 1);
                            r = T::zero();
                            if k != nn - 1 {
                                r = a!(k + 2, k - 1);
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != T::zero() {
                                p = p / x;
                                q = q / x;
                                r = r / x;
                            }
                        }
                        let norm = (p * p + q * q + r * r).sqrt();
                        let s = if p >= T::zero() { norm } else { -norm };
                        if s != T::zero() {
                            if k == m {
                                if l != m {
                                    a!(k, k - 1) = -a!(k, k - 1);
                                }
                            } else {
                                a!(k, k - 1) = -s * x;
                            }
                            p = p + s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q = q / p;
                            r = r / p;
                            for j in k..=nn {
                                p = a!(k, j) + q * a!(k + 1, j);
                                if k != nn - 1 {
                                    p = p + r * a!(k + 2, j);
                                    a!(k + 2, j) = a!(k + 2, j) - p * z;
                                }
                                a!(k + 1, j) = a!(k + 1, j) - p * y;
                                a!(k, j) = a!(k, j) - p * x;
                            }
                            let mmin = if nn < k + 3 { nn } else { k + 3 };
                            for i in l..=mmin {
                                p = x * a!(i, k) + y * a!(i, k + 1);
                                if k != nn - 1 {
                                    p = p + z * a!(i, k + 2);
                                    a!(i, k + 2) = a!(i, k + 2) - p * r;
                                }
                                a!(i, k + 1) = a!(i, k + 1) - p * q;
                                a!(i, k) = a!(i, k) - p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 2 || l + 1 >= nn {
                break;
            }
        }
    }
    Ok(wr
        .into_iter()
        .zip(wi)
        .map(|(re, im)| Complex::new(re, im))
        .collect())
}

/// All eigenvalues of a square real matrix, in no particular order.
pub fn dense_eigen<T: Real>(m: &DenseMatrix<T>) -> Result<Vec<Complex<T>>> {
    let mut a = m.clone();
    balance(&mut a);
    hessenberg(&mut a);
    hessenberg_eigenvalues(&mut a)
}

/// Eigenvector for a (numerically) real eigenvalue by shifted inverse
/// iteration. The result has unit Euclidean norm.
pub fn real_eigenvector<T: Real>(m: &DenseMatrix<T>, eigenvalue: T) -> Result<Vec<T>> {
    let n = m.dim();
    let scale = m.frobenius_norm().max(T::one());
    let shift = eigenvalue + lit::<T>(64.0) * T::epsilon() * scale;
    let mut shifted = m.clone();
    for i in 0..n {
        shifted[(i, i)] = shifted[(i, i)] - shift;
    }
    let lu = Lu::factor(&shifted, T::epsilon() * scale);
    let mut x: Vec<T> = (0..n)
        .map(|i| T::one() + lit::<T>(0.01) * T::from_usize(i % 7).unwrap())
        .collect();
    for _ in 0..8 {
        let y = lu.solve(&x);
        let norm = y.iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
        if !(norm.is_finite() && norm > T::zero()) {
            return Err(SpectraError::NoConvergence {
                routine: "inverse iteration",
                iterations: 8,
            });
        }
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Ok(x)
}
