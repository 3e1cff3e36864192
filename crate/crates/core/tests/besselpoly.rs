mod common;

use common::identities;
use proptest::prelude::*;
use spectra_core::besselpoly::{bessel_norm, bpoly_sequence, BPolyParams, BesselFamily};

const MUS: [f64; 3] = [-2.5, -6.125, -10.25];

fn assert_check(mu: f64, c: identities::Check) {
    assert!(
        c.ok(),
        "μ = {mu}: {} error {:e} exceeds {:e}",
        c.name,
        c.error,
        c.tol
    );
}

#[test]
fn recursion_matches_terminating_series() {
    MUS.iter()
        .for_each(|&mu| assert_check(mu, identities::recursion_vs_series(mu)));
}

#[test]
fn orthogonality_by_quadrature() {
    MUS.iter()
        .for_each(|&mu| assert_check(mu, identities::orthogonality(mu)));
}

#[test]
fn norm_inverts_quadrature_integral() {
    let fam = BesselFamily::new(-6.125).unwrap();
    for n in 0..=3usize {
        let f = |u: f64| {
            if u == 0.0 {
                return 0.0;
            }
            let yv = fam.sequence(1.0 / u).unwrap()[n];
            u.powf(2.0 * 6.125 - 2.0) * (-u).exp() * yv * yv
        };
        let integral = spectra_core::linalg::integrate_to_infinity(f, 0.0, 0.0, 1e-11).unwrap();
        let want = 1.0 / integral.sqrt();
        let got = bessel_norm(&fam, n).unwrap();
        assert!(
            (got - want).abs() <= 1e-6 * want,
            "n = {n}: {got} vs {want}"
        );
    }
}

#[test]
fn differential_equation_residual() {
    MUS.iter()
        .for_each(|&mu| assert_check(mu, identities::differential_equation(mu)));
}

#[test]
fn forward_shift_relation() {
    MUS.iter()
        .for_each(|&mu| assert_check(mu, identities::forward_shift(mu)));
}

#[test]
fn backward_shift_relations() {
    for &mu in &MUS {
        assert_check(mu, identities::backward_shift(mu));
        assert_check(mu, identities::backward_shift_recursion_form(mu));
    }
}

#[test]
fn generating_function_truncation() {
    MUS.iter()
        .for_each(|&mu| assert_check(mu, identities::generating_function(mu)));
}

#[test]
fn laguerre_connection_formula() {
    MUS.iter()
        .for_each(|&mu| assert_check(mu, identities::laguerre_connection(mu)));
}

#[test]
fn differential_residual_shrinks_with_step() {
    // plain central differences: the residual falls as h²
    let (mu, n, x) = (-6.125, 4usize, 1.0);
    let f = |t: f64| BesselFamily::new(mu).unwrap().sequence(t).unwrap()[n];
    let residual = |h: f64| {
        let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
        let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        (x * x * d2 + (1.0 + 2.0 * x * (mu + 1.0)) * d1
            - n as f64 * (n as f64 + 2.0 * mu + 1.0) * f(x))
        .abs()
    };
    let (r1, r2) = (residual(0.02), residual(0.01));
    assert!(r1 / r2 > 3.5, "{r1:e} {r2:e}");
}

proptest! {
    #[test]
    fn b_polynomial_has_degree_n(mu_frac in 0.05f64..0.45, depth in 3usize..8, gamma in -3.0f64..-0.1) {
        let mu = -(depth as f64) - 0.5 - mu_frac;
        let count = depth;
        // (n+2)-point forward differences annihilate a degree-n polynomial
        let zs: Vec<f64> = (0..count + 2).map(|i| -1.0 + 0.25 * i as f64).collect();
        let table: Vec<Vec<f64>> = zs
            .iter()
            .map(|&z| bpoly_sequence(mu, BPolyParams { gamma, z }, count).unwrap())
            .collect();
        for n in 0..count {
            let mut col: Vec<f64> = table.iter().map(|row| row[n]).collect();
            let scale = col.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
            for _ in 0..n + 1 {
                col = col.windows(2).map(|w| w[1] - w[0]).collect();
            }
            for v in col {
                prop_assert!(v.abs() <= 1e-7 * scale * 2f64.powi(n as i32 + 1), "n = {}, residue {}", n, v);
            }
        }
    }

    #[test]
    fn definite_recursion_in_valid_range(mu in -30.0f64..-0.6) {
        if let Ok(fam) = BesselFamily::new(mu) {
            for n in 0..fam.n_max() {
                let (_, _, cp) = fam.recursion_coefficients(n);
                let (_, cm_next, _) = fam.recursion_coefficients(n + 1);
                prop_assert!(-cm_next * cp > 0.0);
            }
            prop_assert!(mu < -(fam.n_max() as f64) - 0.5);
        }
    }
}
