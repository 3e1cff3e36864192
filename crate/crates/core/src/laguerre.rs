//! Energy-independent Laguerre-basis diagonalization.
//!
//! Basis `χ_n(y) = C_n y^{ℓ/2} e^{−y/2} L_n^ν(y)` with `y = (λr)^{−2}` and
//! `ν = ℓ + 1/2`. The Hamiltonian is tridiagonal; the overlap is a Gram matrix
//! evaluated by Gauss–Laguerre quadrature.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, invalid, Result, SpectraError};
use crate::linalg::quadrature::{gauss_laguerre, orthonormal_laguerre_scaled};
use crate::linalg::{
    generalized_sym_eigen, sym_eigen_dense, DenseMatrix, SymMatrix, TridiagonalSymmetric,
};
use crate::model::PotentialParams;
use crate::scalar::{from_usize, lit, Real};
use crate::spectrum::{to_f64s, Method, SpectrumResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaguerreBasis<T> {
    pub lambda_scale: T,
    pub size: usize,
    pub nu: T,
    pub alpha_exp: T,
}

impl<T: Real> LaguerreBasis<T> {
    /// `ν = ℓ + 1/2`, `α = ℓ/2`.
    pub fn new(ell: u32, lambda_scale: T, size: usize) -> Result<Self> {
        let l = T::from_u32(ell).expect("ℓ representable");
        Self::with_nu(l + lit(0.5), lambda_scale, size)
    }

    /// Basis with an arbitrary Laguerre index; `α = (ν − 1/2)/2`.
    pub fn with_nu(nu: T, lambda_scale: T, size: usize) -> Result<Self> {
        if !(lambda_scale > T::zero()) || !lambda_scale.is_finite() {
            return Err(invalid(format!("λ must be positive, got {lambda_scale}")));
        }
        if size == 0 {
            return Err(invalid("basis size must be at least 1"));
        }
        if !(nu > -T::one()) {
            return Err(invalid(format!("ν must exceed −1, got {nu}")));
        }
        Ok(Self {
            lambda_scale,
            size,
            nu,
            alpha_exp: lit::<T>(0.5) * (nu - lit(0.5)),
        })
    }
}

/// Quadrature order used when the caller does not choose one.
pub fn default_quad_order(size: usize) -> usize {
    size
}

/// How the overlap integral `∫ y^{ν−2} e^{−y} L_n^ν L_m^ν dy` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum OverlapScheme {
    /// Gauss rule for weight `y^ν e^{−y}` applied to `y^{−2} L_n L_m`.
    /// Defined for every ℓ; a regularization when `ν ≤ 1`.
    #[default]
    Regularized,
    /// Gauss rule for weight `y^{ν−2} e^{−y}`; exact for order ≥ size,
    /// available only when `ν > 1`.
    Exact,
}

pub fn lag_hamiltonian<T: Real>(
    p: &PotentialParams<T>,
    basis: &LaguerreBasis<T>,
) -> Result<TridiagonalSymmetric<T>> {
    p.require_zero_lambda()?;
    let lam = basis.lambda_scale;
    let la4 = (lam * p.a()).powi(4);
    let lb2 = (lam * p.b()) * (lam * p.b());
    let half_l2 = lit::<T>(0.5) * lam * lam;
    let l = p.ell_f();
    let diag = (0..basis.size)
        .map(|n| {
            let k = lit::<T>(2.0) * from_usize::<T>(n) + l + lit(1.5);
            half_l2 * ((la4 + T::one()) * k - lit::<T>(2.0) * lb2)
        })
        .collect();
    let off = (0..basis.size.saturating_sub(1))
        .map(|n| {
            let nf = from_usize::<T>(n);
            -half_l2 * (la4 - T::one()) * ((nf + T::one()) * (nf + l + lit(1.5))).sqrt()
        })
        .collect();
    TridiagonalSymmetric::new(diag, off)
}

/// Dense, symmetric overlap matrix. Requires `quad_order ≥ size`.
pub fn lag_overlap<T: Real>(basis: &LaguerreBasis<T>, quad_order: usize) -> Result<DenseMatrix<T>> {
    lag_overlap_with(basis, quad_order, OverlapScheme::Regularized)
}

pub fn lag_overlap_with<T: Real>(
    basis: &LaguerreBasis<T>,
    quad_order: usize,
    scheme: OverlapScheme,
) -> Result<DenseMatrix<T>> {
    let size = basis.size;
    if quad_order < size {
        return Err(invalid(format!(
            "quadrature order {quad_order} is below the basis size {size}"
        )));
    }
    let nu = basis.nu;
    let (rule_exp, y_power) = match scheme {
        OverlapScheme::Regularized => (nu, -2),
        OverlapScheme::Exact => {
            if !(nu > T::one()) {
                return Err(SpectraError::UnsupportedParameter(format!(
                    "exact overlap needs ν > 1, got ν = {nu}"
                )));
            }
            (nu - lit(2.0), 0)
        }
    };
    let rule = gauss_laguerre(rule_exp, quad_order)?;
    // rows u_k(x_i) = p_k(x_i) · sqrt(w_i · x_i^{y_power})
    let columns: Vec<Vec<T>> = rule
        .nodes
        .iter()
        .zip(&rule.log_weights)
        .map(|(&x, &lw)| {
            let (v, ln_scale) = orthonormal_laguerre_scaled(nu, x, size);
            let log_factor =
                ln_scale + lit::<T>(0.5) * (lw + T::from_i32(y_power).unwrap() * x.ln());
            v.into_iter().map(|e| e * log_factor.exp()).collect()
        })
        .collect();
    let mut omega = DenseMatrix::zeros(size);
    for col in &columns {
        for n in 0..size {
            let un = col[n];
            for m in n..size {
                omega[(n, m)] = omega[(n, m)] + un * col[m];
            }
        }
    }
    for n in 0..size {
        for m in 0..n {
            omega[(n, m)] = omega[(m, n)];
        }
    }
    Ok(omega)
}

pub fn lag_spectrum<T: Real>(
    p: &PotentialParams<T>,
    basis: &LaguerreBasis<T>,
    quad_order: usize,
) -> Result<SpectrumResult<T>> {
    lag_spectrum_with(p, basis, quad_order, OverlapScheme::Regularized)
}

pub fn lag_spectrum_with<T: Real>(
    p: &PotentialParams<T>,
    basis: &LaguerreBasis<T>,
    quad_order: usize,
    scheme: OverlapScheme,
) -> Result<SpectrumResult<T>> {
    let h = lag_hamiltonian(p, basis)?;
    let omega = lag_overlap_with(basis, quad_order, scheme)?;
    let eig = generalized_sym_eigen(
        &SymMatrix::Tridiagonal(h),
        &SymMatrix::Dense(omega.clone()),
        false,
    )?;
    let bound: Vec<T> = eig
        .values
        .iter()
        .copied()
        .filter(|&e| e < T::zero())
        .collect();
    let ov = sym_eigen_dense(&omega, false)?.values;
    let cond = match (ov.first(), ov.last()) {
        (Some(&lo), Some(&hi)) if lo > T::zero() => (hi / lo).to_f64().unwrap_or(f64::INFINITY),
        _ => f64::INFINITY,
    };
    Ok(SpectrumResult::new(Method::Laguerre, bound, *p)?
        .with_diagnostic("lambda", basis.lambda_scale.to_f64().unwrap_or(f64::NAN))
        .with_diagnostic("size", basis.size)
        .with_diagnostic("quad_order", quad_order)
        .with_diagnostic("overlap_condition", cond)
        .with_diagnostic(
            "lowest_eigenvalues",
            to_f64s(&eig.values[..eig.values.len().min(12)]),
        ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlateauOptions<T> {
    pub lambda_low: T,
    pub lambda_high: T,
    pub steps: usize,
    /// Neighbouring samples agree when `|ΔE| ≤ rel_tol·|E| + abs_tol` for every level.
    pub rel_tol: T,
    pub abs_tol: T,
    /// `None` selects [`default_quad_order`].
    pub quad_order: Option<usize>,
}

impl<T: Real> Default for PlateauOptions<T> {
    fn default() -> Self {
        Self {
            lambda_low: lit(0.05),
            lambda_high: T::one(),
            steps: 40,
            rel_tol: lit(1e-6),
            abs_tol: lit(1e-4),
            quad_order: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Plateau<T> {
    /// Geometric midpoint of the plateau.
    pub lambda_star: T,
    pub lambda_low: T,
    pub lambda_high: T,
    /// `ln(λ_high/λ_low)`.
    pub log_width: T,
    pub samples: usize,
    pub spectrum: SpectrumResult<T>,
}

impl<T: Real> Plateau<T> {
    pub fn contains(&self, lambda: T) -> bool {
        lambda >= self.lambda_low && lambda <= self.lambda_high
    }
}

/// Geometric grid of `steps` points on `[low, high]`.
pub fn geometric_grid<T: Real>(low: T, high: T, steps: usize) -> Vec<T> {
    if steps == 1 {
        return vec![low];
    }
    let ratio = (high / low).ln() / from_usize::<T>(steps - 1);
    (0..steps)
        .map(|i| low * (ratio * from_usize::<T>(i)).exp())
        .collect()
}

fn agrees<T: Real>(x: &[T], y: &[T], rel: T, abs: T) -> bool {
    !x.is_empty()
        && x.len() == y.len()
        && x.iter()
            .zip(y)
            .all(|(a, b)| (*a - *b).abs() <= rel * a.abs().max(b.abs()) + abs)
}

pub fn lag_plateau<T: Real>(
    p: &PotentialParams<T>,
    size: usize,
    lambda_range: (T, T),
    steps: usize,
) -> Result<Plateau<T>> {
    let opts = PlateauOptions {
        lambda_low: lambda_range.0,
        lambda_high: lambda_range.1,
        steps,
        ..PlateauOptions::default()
    };
    lag_plateau_with(p, size, &opts)
}

/// Scans λ geometrically and returns the widest run of mutually agreeing
/// neighbours, with the spectrum at its midpoint.
pub fn lag_plateau_with<T: Real>(
    p: &PotentialParams<T>,
    size: usize,
    opts: &PlateauOptions<T>,
) -> Result<Plateau<T>> {
    let (low, high) = (opts.lambda_low, opts.lambda_high);
    if !(low > T::zero()) || !(high > low) {
        return Err(domain(format!(
            "λ range must satisfy 0 < low < high, got ({low}, {high})"
        )));
    }
    if opts.steps < 3 {
        return Err(invalid(format!(
            "plateau scan needs at least 3 steps, got {}",
            opts.steps
        )));
    }
    p.require_zero_lambda()?;
    let quad = opts.quad_order.unwrap_or_else(|| default_quad_order(size));
    let grid = geometric_grid(low, high, opts.steps);
    let spectra: Vec<Option<Vec<T>>> = grid
        .par_iter()
        .map(|&lam| {
            let basis = LaguerreBasis::new(p.ell(), lam, size).ok()?;
            lag_spectrum(p, &basis, quad).ok().map(|s| s.energies)
        })
        .collect();
    let (mut best_start, mut best_len) = (0, 0);
    let mut start = 0;
    for i in 0..grid.len() {
        let linked = i + 1 < grid.len()
            && matches!((&spectra[i], &spectra[i + 1]), (Some(x), Some(y)) if agrees(x, y, opts.rel_tol, opts.abs_tol));
        if !linked {
            let len = i + 1 - start;
            if len > best_len && spectra[start].as_ref().is_some_and(|s| !s.is_empty()) {
                best_start = start;
                best_len = len;
            }
            start = i + 1;
        }
    }
    if best_len < 3 {
        return Err(SpectraError::NoPlateau {
            samples: grid.len(),
        });
    }
    let (lo, hi) = (grid[best_start], grid[best_start + best_len - 1]);
    let lambda_star = (lo * hi).sqrt();
    let basis = LaguerreBasis::new(p.ell(), lambda_star, size)?;
    let spectrum = lag_spectrum(p, &basis, quad)?
        .with_diagnostic("plateau_low", lo.to_f64().unwrap_or(f64::NAN))
        .with_diagnostic("plateau_high", hi.to_f64().unwrap_or(f64::NAN))
        .with_diagnostic("plateau_samples", best_len);
    Ok(Plateau {
        lambda_star,
        lambda_low: lo,
        lambda_high: hi,
        log_width: (hi / lo).ln(),
        samples: best_len,
        spectrum,
    })
}
