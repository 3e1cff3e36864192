//! Bound states of the radial potential
//! `V(r) = [ℓ(ℓ+1) + Λ]/(2r²) − b²/r⁴ + a⁴/(2r⁶)`
//! by three independent routes:
//!
//! - [`tra`]: a finite Bessel-polynomial basis with a tridiagonal wave operator,
//! - [`laguerre`]: diagonalization in a Laguerre basis with a scale parameter λ,
//! - [`fdm`]: high-order finite differences on a compactified grid.
//!
//! Everything is generic over [`Real`]; the aliases below fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod besselpoly;
pub mod error;
pub mod fdm;
pub mod fit;
pub mod laguerre;
pub mod linalg;
pub mod model;
pub mod scalar;
pub mod spectrum;
pub mod tra;

pub use besselpoly::{bessel_norm, bessel_sequence, bpoly_sequence, BPolyParams, BesselFamily};
pub use error::{Result, SpectraError};
pub use fdm::{fd_assemble, fd_spectrum, fd_spectrum_single_tau, fd_tau, FdConfig};
pub use fit::{fit_spectrum_formula, FitResult, LevelFit};
pub use laguerre::{
    lag_hamiltonian, lag_overlap, lag_plateau, lag_plateau_with, lag_spectrum, lag_spectrum_with,
    LaguerreBasis, OverlapScheme, Plateau, PlateauOptions,
};
pub use model::{mapped_potential_value, potential_value, PotentialParams};
pub use scalar::Real;
pub use spectrum::{Diagnostic, Method, SpectrumResult};
pub use tra::{
    tra_assemble, tra_basis, tra_coefficients, tra_spectrum, tra_wavefunction, Normalization,
    TraBasis, TraSystem, WavefunctionTable,
};

pub type Params = PotentialParams<f64>;
pub type Spectrum = SpectrumResult<f64>;
pub type Wavefunction = WavefunctionTable<f64>;
pub type FdSettings = FdConfig<f64>;
pub type Basis = LaguerreBasis<f64>;
pub type Fit = FitResult<f64>;
