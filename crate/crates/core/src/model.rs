//! Physical parameters of the inverse quartic-sextic radial potential
//!
//! `V(r) = [ℓ(ℓ+1) + Λ]/(2r²) − b²/r⁴ + a⁴/(2r⁶)` in atomic units.

use serde::{Deserialize, Serialize};

use crate::error::{domain, invalid, Result, SpectraError};
use crate::scalar::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams<T> {
    a: T,
    b: T,
    ell: u32,
    lambda_cap: T,
}

impl<T: Real> PotentialParams<T> {
    /// Parameters with `Λ = 0`.
    pub fn new(a: T, b: T, ell: u32) -> Result<Self> {
        Self::with_lambda(a, b, ell, T::zero())
    }

    pub fn with_lambda(a: T, b: T, ell: u32, lambda_cap: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && lambda_cap.is_finite()) {
            return Err(invalid("a, b and Λ must be finite"));
        }
        if a <= T::zero() {
            return Err(invalid(format!("a must be positive, got {a}")));
        }
        if b.abs() <= a.abs() {
            return Err(invalid(format!("|b| must exceed |a| (a = {a}, b = {b})")));
        }
        Ok(Self {
            a,
            b,
            ell,
            lambda_cap,
        })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn lambda_cap(&self) -> T {
        self.lambda_cap
    }

    /// Same potential at a different angular momentum.
    pub fn with_ell(&self, ell: u32) -> Self {
        Self { ell, ..*self }
    }

    /// Lengths multiplied by `sigma`; energies then scale by `1/σ²`.
    pub fn scaled(&self, sigma: T) -> Result<Self> {
        Self::with_lambda(self.a * sigma, self.b * sigma, self.ell, self.lambda_cap)
    }

    pub fn ell_f(&self) -> T {
        T::from_u32(self.ell).expect("ℓ representable")
    }

    /// `ℓ(ℓ+1)`
    pub fn centrifugal(&self) -> T {
        let l = self.ell_f();
        l * (l + T::one())
    }

    /// `(ℓ + 1/2)²`
    pub fn ell_half_sq(&self) -> T {
        let v = self.ell_f() + lit(0.5);
        v * v
    }

    /// `(b/a)²`
    pub fn ratio_sq(&self) -> T {
        let q = self.b / self.a;
        q * q
    }

    /// Dimensionless energy `ε = a²E`.
    pub fn reduced_energy(&self, energy: T) -> T {
        self.a * self.a * energy
    }

    pub fn energy_from_reduced(&self, eps: T) -> T {
        eps / (self.a * self.a)
    }

    /// `x = (r/a)²`
    pub fn x_of_r(&self, r: T) -> T {
        let u = r / self.a;
        u * u
    }

    /// The three solvers were derived with `Λ = 0`.
    pub fn require_zero_lambda(&self) -> Result<()> {
        if self.lambda_cap != T::zero() {
            return Err(SpectraError::UnsupportedParameter(format!(
                "solvers assume Λ = 0, got Λ = {}",
                self.lambda_cap
            )));
        }
        Ok(())
    }
}

pub fn potential_value<T: Real>(p: &PotentialParams<T>, r: T) -> Result<T> {
    if !(r > T::zero()) {
        return Err(domain(format!("potential requires r > 0, got {r}")));
    }
    let r2 = r * r;
    let a2 = p.a * p.a;
    let centrifugal = (p.centrifugal() + p.lambda_cap) / (lit::<T>(2.0) * r2);
    let quartic = p.b * p.b / (r2 * r2);
    let sextic = a2 * a2 / (lit::<T>(2.0) * r2 * r2 * r2);
    Ok(centrifugal - quartic + sextic)
}

/// Potential under the compactification `r = tan(πs/2)/τ`.
pub fn mapped_potential_value<T: Real>(p: &PotentialParams<T>, tau: T, s: T) -> Result<T> {
    if !(tau > T::zero()) {
        return Err(domain(format!("τ must be positive, got {tau}")));
    }
    if !(s > T::zero() && s < T::one()) {
        return Err(domain(format!("s must lie in (0, 1), got {s}")));
    }
    let t = (T::FRAC_PI_2() * s).tan();
    let t2 = t * t;
    let bt = p.b * tau;
    let at2 = p.a * tau * p.a * tau;
    let bracket =
        p.centrifugal() + p.lambda_cap - lit::<T>(2.0) * bt * bt / t2 + at2 * at2 / (t2 * t2);
    Ok(tau * tau / (lit::<T>(2.0) * t2) * bracket)
}

/// `s = (2/π) arctan(τr)`
pub fn compactify<T: Real>(tau: T, r: T) -> T {
    (tau * r).atan() / T::FRAC_PI_2()
}

/// Inverse of [`compactify`].
pub fn decompactify<T: Real>(tau: T, s: T) -> T {
    (T::FRAC_PI_2() * s).tan() / tau
}
