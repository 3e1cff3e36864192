//! Tridiagonal-representation solution: a finite Bessel-polynomial basis in
//! which the wave operator is tridiagonal, giving a small generalized
//! eigenproblem `H v = E Ω v` with diagonal `H`.

use serde::Serialize;

use crate::besselpoly::{bpoly_sequence, max_degree, BPolyParams, BesselFamily};
use crate::error::{domain, Result, SpectraError};
use crate::linalg::quadrature::integrate;
use crate::linalg::{generalized_sym_eigen, SymMatrix, TridiagonalSymmetric};
use crate::model::{potential_value, PotentialParams};
use crate::scalar::{from_usize, lit, Real};
use crate::spectrum::{to_f64s, Method, SpectrumResult};

/// Eigenvalues in `[−MARGINAL_BAND, 0)` are flagged in diagnostics.
pub const MARGINAL_BAND: f64 = 1e-12;

/// Basis parameters: `μ = −(b/a)²/2` and `capacity = N + 1` functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraBasis<T> {
    pub mu: T,
    pub capacity: usize,
    pub a: T,
    pub ell: u32,
}

impl<T: Real> TraBasis<T> {
    /// Largest polynomial degree `N`.
    pub fn n_max(&self) -> usize {
        self.capacity - 1
    }

    /// Exponent `α = μ + 3/4` of the `x` prefactor.
    pub fn alpha(&self) -> T {
        self.mu + lit(0.75)
    }
}

pub fn tra_basis<T: Real>(p: &PotentialParams<T>) -> Result<TraBasis<T>> {
    p.require_zero_lambda()?;
    let q = p.ratio_sq();
    let mu = -lit::<T>(0.5) * q;
    if !(mu < -lit::<T>(0.5)) {
        return Err(SpectraError::UnsupportedRegime(format!(
            "(b/a)² = {q} leaves no admissible basis function"
        )));
    }
    let by_formula = (lit::<T>(0.5) * q + lit(0.5))
        .floor()
        .to_usize()
        .ok_or_else(|| domain("capacity overflows usize"))?;
    // μ = −N − 1/2 exactly violates the strict degree bound
    let strict = max_degree(mu).map_or(0, |n| n + 1);
    let capacity = by_formula.min(strict);
    if capacity == 0 {
        return Err(SpectraError::UnsupportedRegime(format!(
            "empty basis for μ = {mu}"
        )));
    }
    Ok(TraBasis {
        mu,
        capacity,
        a: p.a(),
        ell: p.ell(),
    })
}

/// Diagonal `H` and tridiagonal `Ω` of the TRA eigenproblem.
#[derive(Debug, Clone, PartialEq)]
pub struct TraSystem<T> {
    pub basis: TraBasis<T>,
    pub h_diag: Vec<T>,
    pub omega: TridiagonalSymmetric<T>,
}

/// `Ã_n = −μ/((n+μ)(n+μ+1))`
fn a_tilde<T: Real>(mu: T, n: usize) -> T {
    let k0 = from_usize::<T>(n) + mu;
    -mu / (k0 * (k0 + T::one()))
}

/// `B̃_n = (1/(n+μ+1)) √(−(n+1)(n+2μ+1)/((2n+2μ+1)(2n+2μ+3)))`
fn b_tilde<T: Real>(mu: T, n: usize) -> Result<T> {
    let nf = from_usize::<T>(n);
    let two = lit::<T>(2.0);
    let radicand = -(nf + T::one()) * (nf + two * mu + T::one())
        / ((two * nf + two * mu + T::one()) * (two * nf + two * mu + lit(3.0)));
    if !(radicand > T::zero()) {
        return Err(SpectraError::InvariantViolation(format!(
            "overlap off-diagonal radicand {radicand} at n = {n} is not positive"
        )));
    }
    Ok(radicand.sqrt() / (nf + mu + T::one()))
}

pub fn tra_assemble<T: Real>(p: &PotentialParams<T>) -> Result<TraSystem<T>> {
    let basis = tra_basis(p)?;
    let mu = basis.mu;
    let size = basis.capacity;
    let a = p.a();
    let lh = p.ell_half_sq();
    let quarter = lit::<T>(0.25);
    let h_diag = (0..size)
        .map(|n| {
            let k = lit::<T>(2.0) * from_usize::<T>(n) + lit::<T>(2.0) * mu + T::one();
            (lh - k * k) / (lit::<T>(4.0) * a * a)
        })
        .collect();
    let diag = (0..size).map(|n| quarter * a_tilde(mu, n)).collect();
    let off = (0..size.saturating_sub(1))
        .map(|n| b_tilde(mu, n).map(|b| quarter * b))
        .collect::<Result<Vec<T>>>()?;
    Ok(TraSystem {
        basis,
        h_diag,
        omega: TridiagonalSymmetric::new(diag, off)?,
    })
}

/// Bound states: the negative generalized eigenvalues of `(H, Ω)`.
///
/// `Ω` is a Gram matrix only while every basis function is normalizable,
/// which holds when the fractional part of `(b/a)²/2` is at most one half;
/// otherwise the Cholesky step reports a definiteness failure.
pub fn tra_spectrum<T: Real>(p: &PotentialParams<T>) -> Result<SpectrumResult<T>> {
    let sys = tra_assemble(p)?;
    let eig = generalized_sym_eigen(
        &SymMatrix::Diagonal(sys.h_diag.clone()),
        &SymMatrix::Tridiagonal(sys.omega.clone()),
        false,
    )?;
    let band = lit::<T>(MARGINAL_BAND);
    let bound: Vec<T> = eig
        .values
        .iter()
        .copied()
        .filter(|&e| e < T::zero())
        .collect();
    let marginal = bound.iter().filter(|&&e| e >= -band).count();
    if marginal > 0 {
        log::warn!("{marginal} TRA eigenvalue(s) within {MARGINAL_BAND} of zero");
    }
    Ok(SpectrumResult::new(Method::Tra, bound, *p)?
        .with_diagnostic("size", sys.basis.capacity)
        .with_diagnostic("capacity", sys.basis.capacity)
        .with_diagnostic("mu", sys.basis.mu.to_f64().unwrap_or(f64::NAN))
        .with_diagnostic("all_eigenvalues", to_f64s(&eig.values))
        .with_diagnostic("marginal", marginal))
}

/// Series coefficients `c_n = A_n² B_n^μ(z; γ)`, `n = 0..=N`, at energy `E < 0`.
pub fn tra_coefficients<T: Real>(p: &PotentialParams<T>, energy: T) -> Result<Vec<T>> {
    if !(energy < T::zero()) {
        return Err(domain(format!(
            "bound-state energy must be negative, got {energy}"
        )));
    }
    let basis = tra_basis(p)?;
    let fam = BesselFamily::with_max_degree(basis.mu, basis.n_max())?;
    let params = BPolyParams::from_reduced_energy(p.reduced_energy(energy), p.ell())?;
    let b = bpoly_sequence(basis.mu, params, basis.capacity)?;
    let norms = fam.norms_squared()?;
    Ok(norms.into_iter().zip(b).map(|(a2, bn)| a2 * bn).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Normalization {
    /// Overall factor `f_0 = 1`.
    #[default]
    Unit,
    /// `∫₀^∞ ψ² dr = 1` with a positive first lobe.
    L2,
}

/// Sampled `(r, ψ(r))` pairs for one bound state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefunctionTable<T> {
    pub energy: T,
    pub r: Vec<T>,
    pub psi: Vec<T>,
}

impl<T: Real> WavefunctionTable<T> {
    pub fn max_abs(&self) -> T {
        self.psi.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Sign changes between lobes whose peak reaches `rel_threshold·max|ψ|`.
    pub fn node_count(&self, rel_threshold: T) -> usize {
        let thr = rel_threshold * self.max_abs();
        let mut last: Option<bool> = None;
        let mut nodes = 0;
        for &v in &self.psi {
            if v.abs() < thr || v == T::zero() {
                continue;
            }
            let positive = v > T::zero();
            if last.is_some_and(|s| s != positive) {
                nodes += 1;
            }
            last = Some(positive);
        }
        nodes
    }
}

/// Evaluates the series wavefunction with `f_0 = 1` at one radius.
struct SeriesWave<T> {
    a: T,
    alpha: T,
    fam: BesselFamily<T>,
    coeffs: Vec<T>,
}

impl<T: Real> SeriesWave<T> {
    fn new(p: &PotentialParams<T>, energy: T) -> Result<Self> {
        let basis = tra_basis(p)?;
        Ok(Self {
            a: p.a(),
            alpha: basis.alpha(),
            fam: BesselFamily::with_max_degree(basis.mu, basis.n_max())?,
            coeffs: tra_coefficients(p, energy)?,
        })
    }

    fn eval(&self, r: T) -> Result<T> {
        if !(r > T::zero()) {
            return Err(domain(format!("wavefunction requires r > 0, got {r}")));
        }
        let x = (r / self.a) * (r / self.a);
        let y = self.fam.sequence(x)?;
        let sum = self
            .coeffs
            .iter()
            .zip(&y)
            .fold(T::zero(), |acc, (c, y)| acc + *c * *y);
        let log_pref = self.alpha * x.ln() - lit::<T>(0.5) / x;
        Ok(log_pref.exp() * sum)
    }
}

fn l2_norm_sq<T: Real>(w: &SeriesWave<T>) -> Result<T> {
    // integrand in u = ln r; power-law tail added in closed form
    let n = w.fam.n_max();
    let p = lit::<T>(4.0) * (w.alpha + from_usize::<T>(n));
    if !(p < -T::one()) {
        return Err(domain(format!(
            "wavefunction decays as r^{} and is not square integrable",
            lit::<T>(0.5) * p
        )));
    }
    let (lo, hi) = (w.a * lit(0.03), w.a * lit(1e3));
    let f = |u: T| {
        let r = u.exp();
        w.eval(r).map(|v| v * v * r).unwrap_or(T::zero())
    };
    let body = integrate(f, lo.ln(), hi.ln(), T::zero(), lit(1e-10))?;
    let edge = w.eval(hi)?;
    let tail = edge * edge * hi / (-p - T::one());
    Ok(body + tail)
}

pub fn tra_wavefunction<T: Real>(
    p: &PotentialParams<T>,
    energy: T,
    r_grid: &[T],
    normalization: Normalization,
) -> Result<WavefunctionTable<T>> {
    let w = SeriesWave::new(p, energy)?;
    let mut psi = r_grid
        .iter()
        .map(|&r| w.eval(r))
        .collect::<Result<Vec<T>>>()?;
    if normalization == Normalization::L2 {
        let scale = T::one() / l2_norm_sq(&w)?.sqrt();
        // sign fixed by the small-r lobe, where the prefactor dominates
        let sign = if w.eval(w.a * lit(0.3))? < T::zero() {
            -T::one()
        } else {
            T::one()
        };
        for v in psi.iter_mut() {
            *v = *v * scale * sign;
        }
    }
    Ok(WavefunctionTable {
        energy,
        r: r_grid.to_vec(),
        psi,
    })
}

/// `‖−ψ''/2 + (V − E)ψ‖ / ‖ψ‖` on `r_grid`, with a central second difference
/// of step `h`.
pub fn wave_equation_residual<T: Real>(
    p: &PotentialParams<T>,
    energy: T,
    r_grid: &[T],
    h: T,
) -> Result<T> {
    let w = SeriesWave::new(p, energy)?;
    let (mut num, mut den) = (T::zero(), T::zero());
    for &r in r_grid {
        let (m, c, pl) = (w.eval(r - h)?, w.eval(r)?, w.eval(r + h)?);
        let d2 = (m - lit::<T>(2.0) * c + pl) / (h * h);
        let res = -lit::<T>(0.5) * d2 + (potential_value(p, r)? - energy) * c;
        num = num + res * res;
        den = den + c * c;
    }
    Ok((num / den).sqrt())
}

/// Uniform grid of `count` radii on `[r_min, r_max]`.
pub fn radial_grid<T: Real>(r_min: T, r_max: T, count: usize) -> Result<Vec<T>> {
    if !(r_min > T::zero()) || !(r_max >= r_min) || count == 0 {
        return Err(domain(format!(
            "radial grid needs 0 < r_min ≤ r_max and at least one point (got {r_min}, {r_max}, {count})"
        )));
    }
    if count == 1 {
        return Ok(vec![r_min]);
    }
    let step = (r_max - r_min) / from_usize::<T>(count - 1);
    Ok((0..count)
        .map(|i| r_min + step * from_usize::<T>(i))
        .collect())
}
