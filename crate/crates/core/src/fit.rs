//! Per-level fit `E(n, ℓ) = C₂(n)·ℓ² − C₀(n)` across angular momenta.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{from_usize, Real};
use crate::spectrum::SpectrumResult;

/// Fewest distinct ℓ values a level needs to be fitted.
pub const MIN_ELL_PER_LEVEL: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelFit<T> {
    pub level: usize,
    pub c0: T,
    pub c2: T,
    /// Euclidean norm of the fit residuals.
    pub residual: T,
    pub ell_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult<T> {
    pub levels: Vec<LevelFit<T>>,
    /// Levels with fewer than [`MIN_ELL_PER_LEVEL`] points.
    pub skipped: Vec<usize>,
}

/// Ordinary least squares of `E` against `ℓ²` for every level present.
pub fn fit_spectrum_formula<T: Real>(spectra: &BTreeMap<u32, SpectrumResult<T>>) -> FitResult<T> {
    let max_level = spectra.values().map(|s| s.count()).max().unwrap_or(0);
    let mut levels = Vec::new();
    let mut skipped = Vec::new();
    for n in 0..max_level {
        let pts: Vec<(T, T)> = spectra
            .iter()
            .filter_map(|(&ell, s)| {
                let l = T::from_u32(ell).expect("ℓ representable");
                s.energy(n).map(|e| (l * l, e))
            })
            .collect();
        if pts.len() < MIN_ELL_PER_LEVEL {
            log::warn!("level {n}: only {} ℓ values, skipped", pts.len());
            skipped.push(n);
            continue;
        }
        let k = from_usize::<T>(pts.len());
        let mx = pts.iter().map(|p| p.0).sum::<T>() / k;
        let my = pts.iter().map(|p| p.1).sum::<T>() / k;
        let sxx = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<T>();
        let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<T>();
        let c2 = sxy / sxx;
        let intercept = my - c2 * mx;
        let residual = pts
            .iter()
            .map(|p| {
                let r = p.1 - (c2 * p.0 + intercept);
                r * r
            })
            .sum::<T>()
            .sqrt();
        levels.push(LevelFit {
            level: n,
            c0: -intercept,
            c2,
            residual,
            ell_count: pts.len(),
        });
    }
    FitResult { levels, skipped }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PotentialParams;
    use crate::spectrum::Method;
    use approx::assert_relative_eq;

    fn synthetic(
        c0: &[f64],
        c2: &[f64],
        ells: std::ops::Range<u32>,
    ) -> BTreeMap<u32, SpectrumResult<f64>> {
        ells.map(|l| {
            let lf = l as f64;
            let mut e: Vec<f64> = c0
                .iter()
                .zip(c2)
                .map(|(a, b)| b * lf * lf - a)
                .filter(|&e| e < 0.0)
                .collect();
            e.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let p = PotentialParams::new(2.0, 15.0, l).unwrap();
            (l, SpectrumResult::new(Method::Tra, e, p).unwrap())
        })
        .collect()
    }

    #[test]
    fn recovers_exact_model() {
        let c0 = [500.0, 300.0, 150.0];
        let c2 = [0.5, 0.3, 0.1];
        let fit = fit_spectrum_formula(&synthetic(&c0, &c2, 0..12));
        assert_eq!(fit.levels.len(), 3);
        for (lv, (a, b)) in fit.levels.iter().zip(c0.iter().zip(&c2)) {
            assert_relative_eq!(lv.c0, *a, max_relative = 1e-12);
            assert_relative_eq!(lv.c2, *b, max_relative = 1e-12);
            assert!(lv.residual < 1e-9);
        }
    }

    #[test]
    fn sparse_levels_are_skipped() {
        let fit = fit_spectrum_formula(&synthetic(&[10.0, 1.0], &[0.01, 0.5], 0..3));
        // level 1 has E < 0 only for ℓ = 0, 1
        assert_eq!(fit.skipped, vec![1]);
        assert_eq!(fit.levels.len(), 1);
    }
}
