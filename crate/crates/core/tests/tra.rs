mod common;

use common::{params, A, B, TRA_REF};
use proptest::prelude::*;
use spectra_core::tra::{radial_grid, wave_equation_residual};
use spectra_core::{
    tra_assemble, tra_spectrum, tra_wavefunction, Normalization, Params, SpectraError,
};

/// Number of generalized eigenvalues below `e`, from the inertia of `H − eΩ`.
fn count_below(p: &Params, e: f64) -> usize {
    let sys = tra_assemble(p).unwrap();
    let d: Vec<f64> = sys
        .h_diag
        .iter()
        .zip(sys.omega.diag())
        .map(|(h, o)| h - e * o)
        .collect();
    let off: Vec<f64> = sys.omega.offdiag().iter().map(|o| -e * o).collect();
    let mut q = 1.0;
    let mut count = 0;
    for i in 0..d.len() {
        q = d[i]
            - if i == 0 {
                0.0
            } else {
                off[i - 1] * off[i - 1] / q
            };
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn admissible() -> impl Strategy<Value = Params> {
    // (b/a)²/2 = m + f with fractional part f ≤ 1/2 keeps Ω definite
    (0.5f64..3.0, 2u32..14, 0.02f64..0.48, 0u32..4)
        .prop_map(|(a, m, f, ell)| Params::new(a, a * (2.0 * (m as f64 + f)).sqrt(), ell).unwrap())
}

#[test]
fn eigenvalues_bracketed_by_inertia() {
    for ell in 0..=5 {
        let p = params(ell);
        let s = tra_spectrum(&p).unwrap();
        for (k, &e) in s.energies.iter().enumerate() {
            let d = 1e-9 * e.abs().max(1e-3);
            assert_eq!(count_below(&p, e - d), k, "ℓ = {ell}, level {k}");
            assert_eq!(count_below(&p, e + d), k + 1, "ℓ = {ell}, level {k}");
        }
        assert_eq!(count_below(&p, 0.0), s.count());
    }
}

#[test]
fn counts_match_reference_table() {
    for (ell, r) in TRA_REF.iter().enumerate() {
        assert_eq!(tra_spectrum(&params(ell as u32)).unwrap().count(), r.len());
    }
}

#[test]
fn lambda_term_is_rejected() {
    let p = Params::with_lambda(A, B, 0, 1.0).unwrap();
    assert!(matches!(
        tra_spectrum(&p),
        Err(SpectraError::UnsupportedParameter(_))
    ));
}

#[test]
fn non_normalizable_top_function_is_reported() {
    // (b/a)²/2 = 6.7, fractional part above one half
    let p = Params::new(1.0, (13.4f64).sqrt(), 0).unwrap();
    assert!(matches!(
        tra_spectrum(&p),
        Err(SpectraError::NotPositiveDefinite { .. })
    ));
}

#[test]
fn wavefunction_nodes_follow_level_index() {
    let p = params(0);
    let s = tra_spectrum(&p).unwrap();
    let grid = radial_grid(0.1, 400.0, 40_000).unwrap();
    for (k, &e) in s.energies.iter().enumerate().take(5) {
        let w = tra_wavefunction(&p, e, &grid, Normalization::L2).unwrap();
        assert_eq!(w.node_count(0.1), k, "level {k}");
        if k < 4 {
            let edge = w
                .psi
                .first()
                .unwrap()
                .abs()
                .max(w.psi.last().unwrap().abs());
            assert!(edge <= 1e-2 * w.max_abs(), "level {k}: edge {edge:e}");
        }
    }
}

#[test]
fn l2_normalization_by_independent_quadrature() {
    let p = params(1);
    let e = tra_spectrum(&p).unwrap().energies[1];
    // trapezoid in ln r; ψ² decays only as a power of r, so the grid runs far out
    let n = 100_000;
    let (lo, hi) = (0.05f64.ln(), 1e9f64.ln());
    let grid: Vec<f64> = (0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
        .collect();
    let w = tra_wavefunction(&p, e, &grid, Normalization::L2).unwrap();
    let du = (hi - lo) / (n - 1) as f64;
    let norm: f64 = w.psi.iter().zip(&grid).map(|(v, r)| v * v * r).sum::<f64>() * du;
    assert!((norm - 1.0).abs() < 1e-4, "∫ψ² = {norm}");
}

#[test]
#[ignore = "TRA energies are Ritz values of a finite basis, so the pointwise residual is far above 1e-5"]
fn wave_equation_residual_is_small() {
    let p = params(0);
    let s = tra_spectrum(&p).unwrap();
    let grid = radial_grid(0.5, 20.0, 400).unwrap();
    for &e in &s.energies {
        let r = wave_equation_residual(&p, e, &grid, 1e-4).unwrap();
        assert!(r <= 1e-5, "E = {e}: residual {r:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_never_exceeds_capacity(p in admissible()) {
        let s = tra_spectrum(&p).unwrap();
        let cap = tra_assemble(&p).unwrap().basis.capacity;
        prop_assert!(s.count() <= cap);
        prop_assert!(s.energies.iter().all(|&e| e < 0.0));
    }

    #[test]
    fn raising_ell_lifts_every_level(p in admissible()) {
        let lo = tra_spectrum(&p).unwrap();
        let hi = tra_spectrum(&p.with_ell(p.ell() + 1)).unwrap();
        prop_assert!(hi.count() <= lo.count());
        for (h, l) in hi.energies.iter().zip(&lo.energies) {
            prop_assert!(h.abs() < l.abs());
        }
    }

    #[test]
    fn length_scaling_law(p in admissible(), sigma in 0.3f64..3.0) {
        let base = tra_spectrum(&p).unwrap();
        let scaled = tra_spectrum(&p.scaled(sigma).unwrap()).unwrap();
        prop_assert_eq!(base.count(), scaled.count());
        for (e, s) in base.energies.iter().zip(&scaled.energies) {
            prop_assert!((s * sigma * sigma - e).abs() <= 1e-9 * e.abs() + 1e-13);
        }
    }
}
