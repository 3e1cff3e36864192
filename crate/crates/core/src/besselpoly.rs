//! Bessel polynomials `Y_n^μ(x)` on the positive half-line and the coefficient
//! polynomials `B_n^μ(z; γ)` that carry the energy dependence of the series
//! solution.
//!
//! Both families are evaluated by upward three-term recursion. For
//! `μ < −N − 1/2` the Bessel recursion is definite (the coefficients of
//! `Y_{n−1}` and `Y_{n+1}` share a sign), which keeps the forward sweep stable
//! over the handful of degrees that occur here.

use crate::error::{domain, invalid, Result, SpectraError};
use crate::scalar::{from_usize, lit, ln_factorial, ln_gamma_signed, Real};

/// A finite Bessel family: degrees `0..=n_max` with `μ < −n_max − 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselFamily<T> {
    mu: T,
    n_max: usize,
}

/// Largest integer strictly less than `−μ − 1/2`, or `None` when there is none.
pub fn max_degree<T: Real>(mu: T) -> Option<usize> {
    let bound = -mu - lit(0.5);
    if !(bound > T::zero()) {
        return None;
    }
    let c = bound.ceil();
    c.to_usize().map(|c| c - 1)
}

impl<T: Real> BesselFamily<T> {
    /// The largest valid family for `μ`.
    pub fn new(mu: T) -> Result<Self> {
        let n_max = max_degree(mu)
            .ok_or_else(|| invalid(format!("Bessel family needs μ < −1/2, got {mu}")))?;
        Ok(Self { mu, n_max })
    }

    /// A family truncated at degree `n_max`; requires `μ < −n_max − 1/2`.
    pub fn with_max_degree(mu: T, n_max: usize) -> Result<Self> {
        if !(mu < -from_usize::<T>(n_max) - lit(0.5)) {
            return Err(invalid(format!(
                "μ = {mu} does not admit degree {n_max} (needs μ < −N − 1/2)"
            )));
        }
        Ok(Self { mu, n_max })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `[Y_0, …, Y_N]` at `x > 0`.
    pub fn sequence(&self, x: T) -> Result<Vec<T>> {
        if !(x > T::zero()) {
            return Err(domain(format!(
                "Bessel polynomial argument must be positive, got {x}"
            )));
        }
        bessel_recurrence(self.mu, x, self.n_max + 1)
    }

    /// Normalization constant `A_n = sqrt(−(2n+2μ+1) / (n! Γ(−n−2μ)))`.
    pub fn norm(&self, n: usize) -> Result<T> {
        if n > self.n_max {
            return Err(invalid(format!(
                "degree {n} exceeds family maximum {}",
                self.n_max
            )));
        }
        norm_constant(self.mu, n)
    }

    /// `A_n²` for every degree in the family.
    pub fn norms_squared(&self) -> Result<Vec<T>> {
        (0..=self.n_max)
            .map(|n| self.norm(n).map(|a| a * a))
            .collect()
    }

    /// Coefficients `(c0, c−, c+)` of `2x Y_n = c0 Y_n − c− Y_{n−1} + c+ Y_{n+1}`.
    pub fn recursion_coefficients(&self, n: usize) -> (T, T, T) {
        bessel_coefficients(self.mu, n)
    }
}

fn bessel_coefficients<T: Real>(mu: T, n: usize) -> (T, T, T) {
    let nf = from_usize::<T>(n);
    let two = lit::<T>(2.0);
    let k0 = nf + mu;
    let k1 = k0 + T::one();
    let kh = two * nf + two * mu + T::one();
    let c0 = -mu / (k0 * k1);
    let cm = nf / (k0 * kh);
    let cp = (nf + two * mu + T::one()) / (k1 * kh);
    (c0, cm, cp)
}

/// Upward recursion for `count` Bessel polynomials at `x`, without checking the
/// definiteness bound on `μ`. Fails only on a vanishing denominator.
pub fn bessel_recurrence<T: Real>(mu: T, x: T, count: usize) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    out.push(T::one());
    let two_x = lit::<T>(2.0) * x;
    for n in 0..count - 1 {
        let (c0, cm, cp) = bessel_coefficients(mu, n);
        if !(c0.is_finite() && cm.is_finite() && cp.is_finite()) || cp == T::zero() {
            return Err(SpectraError::Degenerate(format!(
                "Bessel recursion singular at n = {n} for μ = {mu}"
            )));
        }
        let prev = if n > 0 { out[n - 1] } else { T::zero() };
        let next = ((two_x - c0) * out[n] + cm * prev) / cp;
        out.push(next);
    }
    Ok(out)
}

/// Free-standing evaluation of `[Y_0^μ(x), …, Y_N^μ(x)]`.
pub fn bessel_sequence<T: Real>(fam: &BesselFamily<T>, x: T) -> Result<Vec<T>> {
    fam.sequence(x)
}

/// Free-standing `A_n` for a family.
pub fn bessel_norm<T: Real>(fam: &BesselFamily<T>, n: usize) -> Result<T> {
    fam.norm(n)
}

fn norm_constant<T: Real>(mu: T, n: usize) -> Result<T> {
    let nf = from_usize::<T>(n);
    let two = lit::<T>(2.0);
    let lead = -(two * nf + two * mu + T::one());
    let (lg, sign) = ln_gamma_signed(-nf - two * mu);
    let positive = (lead > T::zero()) == (sign > 0);
    if lead == T::zero() || !lg.is_finite() || !positive {
        return Err(SpectraError::InvariantViolation(format!(
            "normalization radicand for n = {n}, μ = {mu} is not positive"
        )));
    }
    let ln_a2 = lead.abs().ln() - ln_factorial::<T>(n) - lg;
    Ok((lit::<T>(0.5) * ln_a2).exp())
}

/// Parameters of `B_n^μ(z; γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BPolyParams<T> {
    pub gamma: T,
    pub z: T,
}

impl<T: Real> BPolyParams<T> {
    /// `γ = 8/ε`, `z = (2/ε)(ℓ + 1/2)²` from the reduced energy `ε = a²E`.
    pub fn from_reduced_energy(eps: T, ell: u32) -> Result<Self> {
        if eps == T::zero() || !eps.is_finite() {
            return Err(domain(format!(
                "reduced energy must be finite and non-zero, got {eps}"
            )));
        }
        let l = T::from_u32(ell).expect("ℓ representable") + lit(0.5);
        Ok(Self {
            gamma: lit::<T>(8.0) / eps,
            z: lit::<T>(2.0) / eps * l * l,
        })
    }
}

/// `[B_0, …, B_{count−1}]` from `B_0 = 1`, `B_{−1} = 0`.
pub fn bpoly_sequence<T: Real>(mu: T, params: BPolyParams<T>, count: usize) -> Result<Vec<T>> {
    if count == 0 {
        return Err(invalid("B-polynomial sequence needs count ≥ 1"));
    }
    let mut out = Vec::with_capacity(count);
    out.push(T::one());
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    for n in 0..count - 1 {
        let nf = from_usize::<T>(n);
        let k0 = nf + mu;
        let k1 = k0 + T::one();
        let kh = k0 + half;
        let cp_num = nf + two * mu + T::one();
        if k0 == T::zero() || k1 == T::zero() || kh == T::zero() || cp_num == T::zero() {
            return Err(SpectraError::Degenerate(format!(
                "B-polynomial recursion singular at n = {n} for μ = {mu}"
            )));
        }
        let c0 = -two * mu / (k0 * k1) + params.gamma * kh * kh;
        let cm = nf / (k0 * kh);
        let cp = cp_num / (k1 * kh);
        let prev = if n > 0 { out[n - 1] } else { T::zero() };
        out.push(((params.z - c0) * out[n] + cm * prev) / cp);
    }
    Ok(out)
}
