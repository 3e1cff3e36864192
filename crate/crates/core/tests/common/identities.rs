//! Numerical checks of the Bessel-polynomial identities. Each check returns
//! the worst scaled error and the tolerance it must stay under.

use spectra_core::besselpoly::{bessel_recurrence, max_degree, BesselFamily};
use spectra_core::linalg::integrate_to_infinity;
use statrs::function::gamma::ln_gamma;

pub const SAMPLE_X: [f64; 3] = [0.1, 1.0, 10.0];

pub struct Check {
    pub name: &'static str,
    pub error: f64,
    pub tol: f64,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.error <= self.tol
    }
}

/// Terminating ₂F₀(−n, n+2μ+1; ; −x) and the sum of term magnitudes.
pub fn series(mu: f64, n: usize, x: f64) -> (f64, f64) {
    let (mut term, mut sum, mut mag) = (1.0, 1.0, 1.0);
    let b = n as f64 + 2.0 * mu + 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (kf - n as f64) * (b + kf) * (-x) / (kf + 1.0);
        sum += term;
        mag += term.abs();
    }
    (sum, mag)
}

fn y(mu: f64, n: isize, x: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    bessel_recurrence(mu, x, n as usize + 1).unwrap()[n as usize]
}

/// Three-level Richardson extrapolation of the central first difference.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (d1, d2, d4) = (d(h), d(h / 2.0), d(h / 4.0));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    let s = |h: f64| (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    let (s1, s2, s4) = (s(h), s(h / 2.0), s(h / 4.0));
    let r1 = (4.0 * s2 - s1) / 3.0;
    let r2 = (4.0 * s4 - s2) / 3.0;
    (16.0 * r2 - r1) / 15.0
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}

pub fn n_max(mu: f64) -> usize {
    max_degree(mu).unwrap()
}

pub fn recursion_vs_series(mu: f64) -> Check {
    let fam = BesselFamily::new(mu).unwrap();
    let mut err = 0.0f64;
    for &x in &[0.1, 0.7, 3.0] {
        let seq = fam.sequence(x).unwrap();
        for (n, v) in seq.iter().enumerate() {
            let (s, mag) = series(mu, n, x);
            err = err.max(rel(*v, s, mag));
        }
    }
    Check {
        name: "recursion vs series",
        error: err,
        tol: 1e-10,
    }
}

pub fn orthogonality(mu: f64) -> Check {
    let top = n_max(mu).min(4);
    let norm = |n: usize| {
        -(ln_gamma(n as f64 + 1.0) + ln_gamma(-(n as f64) - 2.0 * mu)).exp()
            / (2.0 * n as f64 + 2.0 * mu + 1.0)
    };
    let mut err = 0.0f64;
    for n in 0..=top {
        for m in n..=top {
            // u = 1/x removes the essential singularity at the origin
            let f = |u: f64| {
                if u == 0.0 {
                    return 0.0;
                }
                u.powf(-2.0 * mu - 2.0)
                    * (-u).exp()
                    * y(mu, n as isize, 1.0 / u)
                    * y(mu, m as isize, 1.0 / u)
            };
            let scale = (norm(n) * norm(m)).sqrt();
            let v = integrate_to_infinity(f, 0.0, 1e-10 * scale, 1e-10).unwrap();
            let want = if n == m { norm(n) } else { 0.0 };
            err = err.max(rel(v, want, scale));
        }
    }
    Check {
        name: "orthogonality",
        error: err,
        tol: 1e-6,
    }
}

pub fn differential_equation(mu: f64) -> Check {
    let mut err = 0.0f64;
    for n in 0..=n_max(mu) {
        let ni = n as isize;
        for &x in &SAMPLE_X {
            let f = |t: f64| y(mu, ni, t);
            let h = 0.05 * x;
            let (d1, d2) = (derivative(f, x, h), second_derivative(f, x, h));
            let terms = [
                x * x * d2,
                (1.0 + 2.0 * x * (mu + 1.0)) * d1,
                -(n as f64) * (n as f64 + 2.0 * mu + 1.0) * f(x),
            ];
            let scale: f64 = terms.iter().map(|t| t.abs()).sum();
            err = err.max(terms.iter().sum::<f64>().abs() / scale.max(1e-300));
        }
    }
    Check {
        name: "differential equation",
        error: err,
        tol: 1e-8,
    }
}

pub fn forward_shift(mu: f64) -> Check {
    let mut err = 0.0f64;
    for n in 1..=n_max(mu) {
        let ni = n as isize;
        for &x in &SAMPLE_X {
            let lhs = derivative(|t| y(mu, ni, t), x, 0.05 * x);
            let rhs = n as f64 * (n as f64 + 2.0 * mu + 1.0) * y(mu + 1.0, ni - 1, x);
            err = err.max(rel(lhs, rhs, rhs.abs().max(lhs.abs())));
        }
    }
    Check {
        name: "forward shift",
        error: err,
        tol: 1e-8,
    }
}

/// `2Y_{n+1}^{μ−1}` as a combination of degree n−1, n, n+1 at parameter μ.
fn lowered(mu: f64, n: isize, x: f64) -> f64 {
    let nf = n as f64;
    let c0 = (nf + 1.0) * (nf + 2.0 * mu) / ((nf + mu) * (nf + mu + 1.0));
    let cm = nf * (nf + 1.0) / ((nf + mu) * (2.0 * nf + 2.0 * mu + 1.0));
    let cp =
        (nf + 2.0 * mu) * (nf + 2.0 * mu + 1.0) / ((nf + mu + 1.0) * (2.0 * nf + 2.0 * mu + 1.0));
    0.5 * (c0 * y(mu, n, x) + cm * y(mu, n - 1, x) + cp * y(mu, n + 1, x))
}

pub fn backward_shift(mu: f64) -> Check {
    let mut err = 0.0f64;
    for n in 0..=n_max(mu) as isize {
        for &x in &SAMPLE_X {
            let d = derivative(|t| y(mu, n, t), x, 0.05 * x);
            let lhs = x * x * d + (2.0 * mu * x + 1.0) * y(mu, n, x);
            let combo = lowered(mu, n, x);
            let direct = y(mu - 1.0, n + 1, x);
            let scale = (x * x * d).abs() + ((2.0 * mu * x + 1.0) * y(mu, n, x)).abs();
            err = err
                .max(rel(lhs, combo, scale))
                .max(rel(direct, combo, scale));
        }
    }
    Check {
        name: "backward shift",
        error: err,
        tol: 1e-8,
    }
}

pub fn backward_shift_recursion_form(mu: f64) -> Check {
    let mut err = 0.0f64;
    for n in 0..=n_max(mu) as isize {
        let nf = n as f64;
        for &x in &SAMPLE_X {
            let lhs = 2.0 * x * x * derivative(|t| y(mu, n, t), x, 0.05 * x);
            let parts = [
                -y(mu, n, x) / ((nf + mu) * (nf + mu + 1.0)),
                y(mu, n - 1, x) / ((nf + mu) * (2.0 * nf + 2.0 * mu + 1.0)),
                y(mu, n + 1, x) / ((nf + mu + 1.0) * (2.0 * nf + 2.0 * mu + 1.0)),
            ];
            let k = nf * (nf + 2.0 * mu + 1.0);
            let rhs = k * parts.iter().sum::<f64>();
            let scale = k.abs() * parts.iter().map(|p| p.abs()).sum::<f64>() + lhs.abs();
            err = err.max(rel(lhs, rhs, scale));
        }
    }
    Check {
        name: "backward shift, recursion form",
        error: err,
        tol: 1e-8,
    }
}

/// Worst ratio of truncation error to the first omitted term (should be ≈ 1).
pub fn generating_function(mu: f64) -> Check {
    let top = n_max(mu);
    let mut worst = 0.0f64;
    for &x in &SAMPLE_X {
        for &r in &[0.1, 0.01] {
            let t = r / (4.0 * x);
            let q = (1.0 - 4.0 * x * t).sqrt();
            let closed =
                2f64.powf(2.0 * mu) / q * (1.0 + q).powf(-2.0 * mu) * (2.0 * t / (1.0 + q)).exp();
            let seq = BesselFamily::new(mu).unwrap().sequence(x).unwrap();
            let mut fact = 1.0;
            let mut partial = 0.0;
            for (n, v) in seq.iter().enumerate() {
                if n > 0 {
                    fact *= n as f64;
                }
                partial += v * t.powi(n as i32) / fact;
            }
            let next =
                series(mu, top + 1, x).0 * t.powi(top as i32 + 1) / (fact * (top + 1) as f64);
            let excess = ((partial - closed).abs() - 1e-14 * closed.abs()).max(0.0);
            worst = worst.max(excess / next.abs());
        }
    }
    Check {
        name: "generating function",
        error: worst,
        tol: 1.25,
    }
}

/// Plain recursion for `L_n^α(y)`.
fn laguerre(n: usize, alpha: f64, yv: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - yv) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn laguerre_connection(mu: f64) -> Check {
    let mut err = 0.0f64;
    for n in 0..=n_max(mu) {
        let nf = n as f64;
        for &x in &SAMPLE_X {
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let via =
                fact * (-x).powi(n as i32) * laguerre(n, -(2.0 * nf + 2.0 * mu + 1.0), 1.0 / x);
            let (s, mag) = series(mu, n, x);
            err = err
                .max(rel(y(mu, n as isize, x), via, mag))
                .max(rel(s, via, mag));
        }
    }
    Check {
        name: "Laguerre connection",
        error: err,
        tol: 1e-10,
    }
}

pub fn all(mu: f64) -> Vec<Check> {
    vec![
        recursion_vs_series(mu),
        orthogonality(mu),
        differential_equation(mu),
        forward_shift(mu),
        backward_shift(mu),
        backward_shift_recursion_form(mu),
        generating_function(mu),
        laguerre_connection(mu),
    ]
}
