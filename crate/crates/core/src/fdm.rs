//! Finite-difference solver on the compactified interval.
//!
//! `r = tan(πs/2)/τ` maps the half-line onto `s ∈ (0, 1)`; the radial equation
//! becomes `A ψ'' + B ψ' + V ψ = E ψ`, discretized with order-2k stencils on a
//! uniform grid with Dirichlet ends.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, invalid, Result};
use crate::linalg::{dense_eigen, fornberg_weights, DenseMatrix};
use crate::model::{mapped_potential_value, PotentialParams};
use crate::scalar::{from_usize, lit, Real};
use crate::spectrum::{to_f64s, Method, SpectrumResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FdConfig<T> {
    /// Interior grid points `M`; spacing `h = 1/(M+1)`.
    pub m_interior: usize,
    /// Stencil half width `k` (scheme order `2k`).
    pub half_width: usize,
    pub tau_coeff: T,
    pub tau_exp: T,
    /// Eigenvalues with `|Im| > imag_tol·|Re| + abs_floor` are discarded.
    pub imag_tol: T,
    pub abs_floor: T,
}

impl<T: Real> Default for FdConfig<T> {
    fn default() -> Self {
        Self {
            m_interior: 1000,
            half_width: 8,
            tau_coeff: lit(0.6),
            tau_exp: lit(-0.7),
            imag_tol: lit(1e-8),
            abs_floor: lit(1e-10),
        }
    }
}

impl<T: Real> FdConfig<T> {
    pub fn new(m_interior: usize, half_width: usize) -> Result<Self> {
        let cfg = Self {
            m_interior,
            half_width,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.half_width < 1 {
            return Err(invalid("stencil half width k must be at least 1"));
        }
        if self.m_interior < 2 * self.half_width + 2 {
            return Err(invalid(format!(
                "M = {} is too small for k = {} (need M ≥ 2k + 2)",
                self.m_interior, self.half_width
            )));
        }
        if !(self.tau_coeff > T::zero())
            || !(self.imag_tol >= T::zero())
            || !(self.abs_floor >= T::zero())
        {
            return Err(invalid(
                "τ coefficient must be positive and realness tolerances non-negative",
            ));
        }
        Ok(())
    }

    pub fn spacing(&self) -> T {
        T::one() / from_usize::<T>(self.m_interior + 1)
    }

    /// Grid abscissa `s_i = i h`.
    pub fn node(&self, i: usize) -> T {
        from_usize::<T>(i) * self.spacing()
    }
}

/// `τ_j = tau_coeff · j^{tau_exp}`.
pub fn fd_tau<T: Real>(j: usize, cfg: &FdConfig<T>) -> Result<T> {
    if j < 1 {
        return Err(domain("eigenvalue index j starts at 1"));
    }
    Ok(cfg.tau_coeff * from_usize::<T>(j).powf(cfg.tau_exp))
}

/// One row of a difference operator on the full grid `0..=M+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilRow<T> {
    pub first: usize,
    pub weights: Vec<T>,
}

impl<T: Real> StencilRow<T> {
    /// Applies the row to full-grid samples.
    pub fn apply(&self, f: &[T]) -> T {
        self.weights
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (j, w)| acc + *w * f[self.first + j])
    }
}

/// Difference weights (already divided by `h` and `h²`) for every interior row.
#[derive(Debug, Clone, PartialEq)]
pub struct FdStencils<T> {
    pub first: Vec<StencilRow<T>>,
    pub second: Vec<StencilRow<T>>,
}

fn stencil_row<T: Real>(
    order: usize,
    i: usize,
    lo: usize,
    hi: usize,
    scale: T,
) -> Result<StencilRow<T>> {
    let offsets: Vec<i64> = (lo..=hi).map(|c| c as i64 - i as i64).collect();
    let w = fornberg_weights::<T>(order, &offsets)?;
    Ok(StencilRow {
        first: lo,
        weights: w.weights.into_iter().map(|x| x * scale).collect(),
    })
}

/// Centred `2k+1`-point stencils in the interior; the `k−1` rows next to each
/// end use the first (last) `2k+1` points for `d/ds` and `2k+2` for `d²/ds²`.
pub fn fd_stencils<T: Real>(cfg: &FdConfig<T>) -> Result<FdStencils<T>> {
    cfg.validate()?;
    let (m, k) = (cfg.m_interior, cfg.half_width);
    let h = cfg.spacing();
    let (s1, s2) = (T::one() / h, T::one() / (h * h));
    let mut first = Vec::with_capacity(m);
    let mut second = Vec::with_capacity(m);
    for i in 1..=m {
        let ((l1, h1), (l2, h2)) = if i < k {
            ((0, 2 * k), (0, 2 * k + 1))
        } else if i > m + 1 - k {
            ((m + 1 - 2 * k, m + 1), (m - 2 * k, m + 1))
        } else {
            ((i - k, i + k), (i - k, i + k))
        };
        first.push(stencil_row(1, i, l1, h1, s1)?);
        second.push(stencil_row(2, i, l2, h2, s2)?);
    }
    Ok(FdStencils { first, second })
}

/// Coefficients `A(s) = −(2τ²/π²)cos⁴(πs/2)` and `B(s) = (2τ²/π)cos³(πs/2)sin(πs/2)`.
pub fn fd_coefficients<T: Real>(tau: T, s: T) -> (T, T) {
    let th = T::FRAC_PI_2() * s;
    let (c, sn) = (th.cos(), th.sin());
    let t2 = tau * tau;
    let pi = T::PI();
    let a = -lit::<T>(2.0) * t2 / (pi * pi) * c.powi(4);
    let b = lit::<T>(2.0) * t2 / pi * c.powi(3) * sn;
    (a, b)
}

fn assemble_with<T: Real>(
    p: &PotentialParams<T>,
    tau: T,
    cfg: &FdConfig<T>,
    st: &FdStencils<T>,
) -> Result<DenseMatrix<T>> {
    let m = cfg.m_interior;
    let mut j = DenseMatrix::zeros(m);
    for i in 1..=m {
        let s = cfg.node(i);
        let (a, b) = fd_coefficients(tau, s);
        let row = i - 1;
        for (rowst, coef) in [(&st.second[row], a), (&st.first[row], b)] {
            for (off, w) in rowst.weights.iter().enumerate() {
                let col = rowst.first + off;
                // Dirichlet ends: ψ_0 = ψ_{M+1} = 0
                if col == 0 || col == m + 1 {
                    continue;
                }
                j[(row, col - 1)] = j[(row, col - 1)] + coef * *w;
            }
        }
        j[(row, row)] = j[(row, row)] + mapped_potential_value(p, tau, s)?;
    }
    Ok(j)
}

/// Dense operator `J = AΔ₂ + BΔ₁ + diag(V)` on the interior grid.
pub fn fd_assemble<T: Real>(
    p: &PotentialParams<T>,
    tau: T,
    cfg: &FdConfig<T>,
) -> Result<DenseMatrix<T>> {
    p.require_zero_lambda()?;
    if !(tau > T::zero()) {
        return Err(domain(format!("τ must be positive, got {tau}")));
    }
    let st = fd_stencils(cfg)?;
    assemble_with(p, tau, cfg, &st)
}

/// Real parts of the eigenvalues of `J` that pass the realness filter, ascending,
/// and the number discarded.
fn real_eigenvalues<T: Real>(j: &DenseMatrix<T>, cfg: &FdConfig<T>) -> Result<(Vec<T>, usize)> {
    let ev = dense_eigen(j)?;
    let total = ev.len();
    let mut re: Vec<T> = ev
        .into_iter()
        .filter(|z| z.im.abs() <= cfg.imag_tol * z.re.abs() + cfg.abs_floor)
        .map(|z| z.re)
        .collect();
    re.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    let discarded = total - re.len();
    Ok((re, discarded))
}

struct LevelPick<T> {
    tau: T,
    value: Option<T>,
    discarded: usize,
}

/// Level `j` (1-based) is the `j`-th real eigenvalue of `J(τ_j)`; the negative
/// picks form the spectrum.
pub fn fd_spectrum<T: Real>(
    p: &PotentialParams<T>,
    cfg: &FdConfig<T>,
    max_states: usize,
) -> Result<SpectrumResult<T>> {
    p.require_zero_lambda()?;
    if max_states == 0 {
        return Err(invalid("max_states must be at least 1"));
    }
    let st = fd_stencils(cfg)?;
    let picks = (1..=max_states)
        .into_par_iter()
        .map(|j| -> Result<LevelPick<T>> {
            let tau = fd_tau(j, cfg)?;
            let mat = assemble_with(p, tau, cfg, &st)?;
            let (re, discarded) = real_eigenvalues(&mat, cfg)?;
            Ok(LevelPick {
                tau,
                value: re.get(j - 1).copied(),
                discarded,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let missing = picks.iter().filter(|l| l.value.is_none()).count();
    if missing > 0 {
        log::warn!("{missing} FD level(s) had too few real eigenvalues");
    }
    let mut bound: Vec<T> = picks
        .iter()
        .filter_map(|l| l.value)
        .filter(|&e| e < T::zero())
        .collect();
    let ordered = bound.windows(2).all(|w| w[0] < w[1]);
    if !ordered {
        log::warn!("FD picks were not ascending; reordered");
        bound.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        bound.dedup();
    }
    let taus: Vec<T> = picks.iter().map(|l| l.tau).collect();
    let picked: Vec<f64> = picks
        .iter()
        .map(|l| l.value.and_then(|v| v.to_f64()).unwrap_or(f64::NAN))
        .collect();
    Ok(SpectrumResult::new(Method::Fd, bound, *p)?
        .with_diagnostic("grid_M", cfg.m_interior)
        .with_diagnostic("stencil_k", cfg.half_width)
        .with_diagnostic("tau", to_f64s(&taus))
        .with_diagnostic("picked", picked)
        .with_diagnostic(
            "discarded",
            picks.iter().map(|l| l.discarded).collect::<Vec<_>>(),
        )
        .with_diagnostic("missing_levels", missing)
        .with_diagnostic("reordered", usize::from(!ordered)))
}

/// Exploratory mode: every level from one solve at a fixed `τ`. Faster than
/// [`fd_spectrum`] but less accurate for shallow levels.
pub fn fd_spectrum_single_tau<T: Real>(
    p: &PotentialParams<T>,
    cfg: &FdConfig<T>,
    tau: T,
    max_states: usize,
) -> Result<SpectrumResult<T>> {
    let mat = fd_assemble(p, tau, cfg)?;
    let (re, discarded) = real_eigenvalues(&mat, cfg)?;
    let bound: Vec<T> = re
        .into_iter()
        .filter(|&e| e < T::zero())
        .take(max_states)
        .collect();
    Ok(SpectrumResult::new(Method::Fd, bound, *p)?
        .with_diagnostic("grid_M", cfg.m_interior)
        .with_diagnostic("stencil_k", cfg.half_width)
        .with_diagnostic("tau", tau.to_f64().unwrap_or(f64::NAN))
        .with_diagnostic("discarded", discarded)
        .with_diagnostic("mode", "single-tau"))
}
