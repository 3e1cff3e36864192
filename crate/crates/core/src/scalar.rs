//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Sum
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts a count or index into `T`.
#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize representable in scalar type")
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
///
/// Poles (non-positive integers) return `(+∞, 1)`.
pub fn ln_gamma_signed<T: Real>(x: T) -> (T, i8) {
    let half = lit::<T>(0.5);
    if x < half {
        if x == x.floor() {
            return (T::infinity(), 1);
        }
        // Γ(x) Γ(1 - x) = π / sin(πx)
        let s = (T::PI() * x).sin();
        let (lg, sg) = ln_gamma_signed(T::one() - x);
        let sign = if s < T::zero() { -sg } else { sg };
        return (T::PI().ln() - s.abs().ln() - lg, sign);
    }
    let x = x - T::one();
    let mut acc = lit::<T>(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + lit::<T>(c) / (x + from_usize(i));
    }
    let t = x + lit::<T>(LANCZOS_G) + half;
    let ln_sqrt_2pi = lit::<T>(0.918_938_533_204_672_7);
    (ln_sqrt_2pi + (x + half) * t.ln() - t + acc.ln(), 1)
}

/// `ln|Γ(x)|`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    ln_gamma_signed(x).0
}

/// `Γ(x)`; overflows to infinity for large arguments.
pub fn gamma<T: Real>(x: T) -> T {
    let (lg, s) = ln_gamma_signed(x);
    let v = lg.exp();
    if s < 0 {
        -v
    } else {
        v
    }
}

/// `ln(n!)`.
pub fn ln_factorial<T: Real>(n: usize) -> T {
    ln_gamma(from_usize::<T>(n) + T::one())
}
