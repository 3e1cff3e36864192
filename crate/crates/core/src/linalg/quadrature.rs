//! Gauss–Laguerre rules (Golub–Welsch) and adaptive Gauss–Kronrod integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{invalid, Result, SpectraError};
use crate::linalg::tridiag::{symtri_eigen, TridiagonalSymmetric};
use crate::scalar::{from_usize, lit, ln_gamma, Real};

/// Gauss rule for `∫₀^∞ y^α e^{−y} f(y) dy`.
///
/// Weights of the outermost nodes underflow for large orders; `log_weights`
/// stays finite and is what the overlap assembly uses.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub log_weights: Vec<T>,
    pub alpha: T,
}

impl<T: Real> QuadratureRule<T> {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate<F: Fn(T) -> T>(&self, f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn jacobi_coefficients<T: Real>(alpha: T, k: usize) -> (T, T) {
    let kf = from_usize::<T>(k);
    let diag = lit::<T>(2.0) * kf + alpha + T::one();
    let off = (kf * (kf + alpha)).sqrt();
    (diag, off)
}

/// Orthonormal Laguerre values `p_0(x), …, p_{count−1}(x)` for the weight
/// `y^α e^{−y}`, with the sign convention of `L_n^α` (positive at the origin).
///
/// Returned as `(v, ln_scale)` with `p_k = v_k · exp(ln_scale)`; the common
/// scale keeps the recursion finite far out on the real axis.
pub fn orthonormal_laguerre_scaled<T: Real>(alpha: T, x: T, count: usize) -> (Vec<T>, T) {
    let mut v = Vec::with_capacity(count);
    let mut ln_scale = -lit::<T>(0.5) * ln_gamma(alpha + T::one());
    if count == 0 {
        return (v, ln_scale);
    }
    let limit = T::max_value().sqrt().sqrt();
    v.push(T::one());
    for k in 0..count - 1 {
        let (a_k, b_k) = jacobi_coefficients(alpha, k);
        let (_, b_next) = jacobi_coefficients(alpha, k + 1);
        let prev = if k > 0 { v[k - 1] } else { T::zero() };
        let next = ((a_k - x) * v[k] - b_k * prev) / b_next;
        v.push(next);
        if next.abs() > limit {
            let inv = T::one() / next.abs();
            for e in v.iter_mut() {
                *e = *e * inv;
            }
            ln_scale = ln_scale + next.abs().ln();
        }
    }
    (v, ln_scale)
}

/// `p_n(x)` and `p_n'(x)` up to a shared positive factor.
fn laguerre_value_and_slope<T: Real>(alpha: T, x: T, n: usize) -> (T, T) {
    let limit = T::max_value().sqrt().sqrt();
    let (mut p_prev, mut p) = (T::zero(), T::one());
    let (mut d_prev, mut d) = (T::zero(), T::zero());
    for k in 0..n {
        let (a_k, b_k) = jacobi_coefficients(alpha, k);
        let (_, b_next) = jacobi_coefficients(alpha, k + 1);
        let p_next = ((a_k - x) * p - b_k * p_prev) / b_next;
        let d_next = ((a_k - x) * d - p - b_k * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        let m = p.abs().max(d.abs());
        if m > limit {
            let inv = T::one() / m;
            p = p * inv;
            p_prev = p_prev * inv;
            d = d * inv;
            d_prev = d_prev * inv;
        }
    }
    (p, d)
}

/// Gauss–Laguerre rule of the given order for weight `y^α e^{−y}`.
///
/// Nodes are the eigenvalues of the Jacobi matrix of the Laguerre recurrence,
/// polished by Newton steps on the recurrence; weights come from the
/// Christoffel function so that tiny weights keep full relative accuracy.
pub fn gauss_laguerre<T: Real>(alpha: T, order: usize) -> Result<QuadratureRule<T>> {
    if !(alpha > -T::one()) {
        return Err(invalid(format!(
            "Laguerre exponent must exceed −1, got {alpha}"
        )));
    }
    if order == 0 {
        return Err(invalid("quadrature order must be at least 1"));
    }
    let diag: Vec<T> = (0..order)
        .map(|k| jacobi_coefficients(alpha, k).0)
        .collect();
    let off: Vec<T> = (1..order)
        .map(|k| jacobi_coefficients(alpha, k).1)
        .collect();
    let jacobi = TridiagonalSymmetric::new(diag, off)?;
    let mut nodes = symtri_eigen(&jacobi, false)?.values;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d) = laguerre_value_and_slope(alpha, *x, order);
            if d == T::zero() {
                break;
            }
            let step = p / d;
            if !(step.abs() < lit::<T>(1e-6) * (T::one() + x.abs())) {
                break;
            }
            *x = *x - step;
        }
    }
    if nodes.first().map_or(true, |&x| x <= T::zero()) {
        return Err(SpectraError::InvariantViolation(
            "Gauss–Laguerre node left (0, ∞)".into(),
        ));
    }
    let log_weights: Vec<T> = nodes
        .iter()
        .map(|&x| {
            let (v, ln_scale) = orthonormal_laguerre_scaled(alpha, x, order);
            let sum_sq = v.iter().fold(T::zero(), |acc, &e| acc + e * e);
            -(sum_sq.ln() + lit::<T>(2.0) * ln_scale)
        })
        .collect();
    let weights = log_weights.iter().map(|&lw| lw.exp()).collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        log_weights,
        alpha,
    })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let c = lit::<T>(0.5) * (a + b);
    let h = lit::<T>(0.5) * (b - a);
    let fc = f(c);
    let mut k = fc * lit(WGK[7]);
    let mut g = fc * lit(WG[3]);
    for j in 0..7 {
        let dx = h * lit(XGK[j]);
        let pair = f(c - dx) + f(c + dx);
        k = k + pair * lit(WGK[j]);
        if j % 2 == 1 {
            g = g + pair * lit(WG[j / 2]);
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Real> Eq for Segment<T> {}
impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

const MAX_SEGMENTS: usize = 4000;

/// Globally adaptive 7/15-point Gauss–Kronrod integration over `[a, b]`.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, abs_tol: T, rel_tol: T) -> Result<T> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(invalid("finite integration limits required"));
    }
    let (value, error) = kronrod(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let (mut total, mut total_err) = (value, error);
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_SEGMENTS {
            return Err(SpectraError::NoConvergence {
                routine: "adaptive Gauss–Kronrod",
                iterations: MAX_SEGMENTS,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = lit::<T>(0.5) * (worst.a + worst.b);
        let (lv, le) = kronrod(&f, worst.a, mid);
        let (rv, re) = kronrod(&f, mid, worst.b);
        total = total - worst.value + lv + rv;
        total_err = total_err - worst.error + le + re;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        if !total.is_finite() {
            return Err(SpectraError::Domain("integrand is not finite".into()));
        }
    }
    // re-sum to shed accumulated cancellation in the running total
    Ok(heap.into_iter().map(|s| s.value).sum())
}

/// `∫_a^∞ f` via `x = a + t/(1 − t)`.
pub fn integrate_to_infinity<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    abs_tol: T,
    rel_tol: T,
) -> Result<T> {
    let g = |t: T| {
        let one_minus = T::one() - t;
        if one_minus <= T::zero() {
            return T::zero();
        }
        let x = a + t / one_minus;
        let v = f(x) / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    integrate(g, T::zero(), T::one(), abs_tol, rel_tol)
}
