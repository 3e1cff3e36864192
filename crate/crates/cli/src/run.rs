use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use spectra_core::tra::radial_grid;
use spectra_core::{
    fd_spectrum, fit_spectrum_formula, lag_plateau_with, lag_spectrum, tra_basis, tra_spectrum,
    tra_wavefunction, Basis, FdSettings, Method, Normalization, Params, PlateauOptions,
    SpectraError, Spectrum,
};
use thiserror::Error;

use crate::args::{
    ConvergeArgs, FitArgs, Format, MethodArg, NormArg, OutputArgs, PotentialArgs, SpectrumArgs,
    WavefunctionArgs,
};
use crate::output::{fmt_sig, round_sig, write_csv, write_json};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("solver failure: {0}")]
    Solver(#[from] SpectraError),
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn potential(p: &PotentialArgs, ell: u32) -> Result<Params> {
    Params::new(p.a, p.b, ell).map_err(usage)
}

fn ell_list(args: &SpectrumArgs) -> Result<Vec<u32>> {
    let (lo, hi) = args.ells.bounds(5);
    if lo > hi {
        return Err(usage(format!("--ell {lo} exceeds --ell-max {hi}")));
    }
    Ok((lo..=hi).collect())
}

fn methods(m: MethodArg) -> Vec<Method> {
    match m {
        MethodArg::Tra => vec![Method::Tra],
        MethodArg::Laguerre => vec![Method::Laguerre],
        MethodArg::Fd => vec![Method::Fd],
        MethodArg::All => Method::ALL.to_vec(),
    }
}

fn fd_config(args: &SpectrumArgs) -> Result<FdSettings> {
    FdSettings::new(args.fd.grid_m, args.fd.stencil_k).map_err(usage)
}

fn validate(args: &SpectrumArgs) -> Result<()> {
    let lag = &args.laguerre;
    if lag.size == 0 {
        return Err(usage("--size must be at least 1"));
    }
    if let Some(q) = lag.quad_order {
        if q < lag.size {
            return Err(usage(format!(
                "--quad-order {q} is below --size {}",
                lag.size
            )));
        }
    }
    if !(lag.lambda > 0.0) {
        return Err(usage(format!(
            "--lambda must be positive, got {}",
            lag.lambda
        )));
    }
    if args.fd.max_states == Some(0) {
        return Err(usage("--max-states must be at least 1"));
    }
    potential(&args.potential, 0)?;
    fd_config(args)?;
    Ok(())
}

fn solve(method: Method, p: &Params, args: &SpectrumArgs) -> Result<Spectrum> {
    Ok(match method {
        Method::Tra => tra_spectrum(p)?,
        Method::Laguerre => {
            let lag = &args.laguerre;
            if lag.auto_lambda {
                let opts = PlateauOptions {
                    quad_order: lag.quad_order,
                    ..PlateauOptions::default()
                };
                lag_plateau_with(p, lag.size, &opts)?.spectrum
            } else {
                let basis = Basis::new(p.ell(), lag.lambda, lag.size)?;
                lag_spectrum(p, &basis, lag.quad_order.unwrap_or(lag.size))?
            }
        }
        Method::Fd => {
            let states = match args.fd.max_states {
                Some(n) => n,
                None => tra_basis(p)?.capacity,
            };
            fd_spectrum(p, &fd_config(args)?, states)?
        }
    })
}

/// Every (method, ℓ) spectrum, ℓ-sweeps in parallel, in deterministic order.
fn solve_all(args: &SpectrumArgs) -> Result<Vec<Spectrum>> {
    validate(args)?;
    let ells = ell_list(args)?;
    let jobs: Vec<(Method, u32)> = methods(args.method)
        .into_iter()
        .flat_map(|m| ells.iter().map(move |&l| (m, l)))
        .collect();
    jobs.par_iter()
        .map(|&(m, l)| solve(m, &potential(&args.potential, l)?, args))
        .collect()
}

#[derive(Serialize)]
struct Row {
    method: Method,
    a: f64,
    b: f64,
    ell: u32,
    n: usize,
    energy: f64,
}

fn rows(spectra: &[Spectrum]) -> Vec<Row> {
    spectra
        .iter()
        .flat_map(|s| {
            s.energies.iter().enumerate().map(move |(n, &e)| Row {
                method: s.method,
                a: s.params.a(),
                b: s.params.b(),
                ell: s.params.ell(),
                n,
                energy: e,
            })
        })
        .collect()
}

fn emit_spectra(spectra: &[Spectrum], out: &OutputArgs) -> Result<()> {
    let path = out.out.as_deref();
    let table = rows(spectra);
    match out.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = table
                .iter()
                .map(|r| {
                    vec![
                        r.method.label().to_string(),
                        fmt_sig(r.a),
                        fmt_sig(r.b),
                        r.ell.to_string(),
                        r.n.to_string(),
                        fmt_sig(r.energy),
                    ]
                })
                .collect();
            write_csv(path, &["method", "a", "b", "ell", "n", "energy"], &body)?;
        }
        Format::Json => {
            let rounded: Vec<Row> = table
                .into_iter()
                .map(|r| Row {
                    energy: round_sig(r.energy),
                    ..r
                })
                .collect();
            let diagnostics: Vec<_> = spectra
                .iter()
                .map(|s| json!({ "method": s.method, "ell": s.params.ell(), "values": s.diagnostics }))
                .collect();
            write_json(
                path,
                &json!({ "rows": rounded, "diagnostics": diagnostics }),
            )?;
        }
    }
    Ok(())
}

pub fn spectrum(args: &SpectrumArgs) -> Result<()> {
    let spectra = solve_all(args)?;
    emit_spectra(&spectra, &args.output)
}

pub fn compare(args: &SpectrumArgs) -> Result<()> {
    let mut all = args.clone();
    all.method = MethodArg::All;
    let spectra = solve_all(&all)?;
    let ells = ell_list(&all)?;
    let lookup: BTreeMap<(Method, u32), &Spectrum> = spectra
        .iter()
        .map(|s| ((s.method, s.params.ell()), s))
        .collect();
    let mut body = Vec::new();
    let mut worst_lag_fd: f64 = 0.0;
    for &ell in &ells {
        let cols: Vec<&Spectrum> = Method::ALL.iter().map(|m| lookup[&(*m, ell)]).collect();
        let depth = cols.iter().map(|s| s.count()).max().unwrap_or(0);
        for n in 0..depth {
            let vals: Vec<Option<f64>> = cols.iter().map(|s| s.energy(n)).collect();
            if let (Some(x), Some(y)) = (vals[1], vals[2]) {
                worst_lag_fd = worst_lag_fd.max((x - y).abs());
            }
            let mut row = vec![ell.to_string(), n.to_string()];
            row.extend(vals.iter().map(|v| v.map(fmt_sig).unwrap_or_default()));
            body.push(row);
        }
    }
    eprintln!("max |Laguerre − FD| = {worst_lag_fd:.3e}");
    let path = all.output.out.as_deref();
    match all.output.format {
        Format::Csv => write_csv(path, &["ell", "n", "TRA", "Laguerre", "FD"], &body)?,
        Format::Json => {
            let rows: Vec<_> = body
                .iter()
                .map(|r| {
                    let num = |s: &String| s.parse::<f64>().ok();
                    json!({ "ell": r[0].parse::<u32>().ok(), "n": r[1].parse::<usize>().ok(),
                            "TRA": num(&r[2]), "Laguerre": num(&r[3]), "FD": num(&r[4]) })
                })
                .collect();
            write_json(
                path,
                &json!({ "a": all.potential.a, "b": all.potential.b, "rows": rows,
                                      "max_laguerre_fd": worst_lag_fd }),
            )?
        }
    }
    Ok(())
}

pub fn converge(args: &ConvergeArgs) -> Result<()> {
    if args.sizes.is_empty() {
        return Err(usage("--sizes needs at least one value"));
    }
    if args.sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage(format!(
            "--sizes must be strictly ascending, got {:?}",
            args.sizes
        )));
    }
    if let Some(q) = args.quad_order {
        if let Some(&top) = args.sizes.last().filter(|&&top| q < top) {
            return Err(usage(format!(
                "--quad-order {q} is below the largest size {top}"
            )));
        }
    }
    let p = potential(&args.potential, args.ell)?;
    let spectra: Vec<Spectrum> = args
        .sizes
        .par_iter()
        .map(|&size| -> Result<Spectrum> {
            let basis = Basis::new(args.ell, args.lambda, size).map_err(usage)?;
            Ok(lag_spectrum(&p, &basis, args.quad_order.unwrap_or(size))?)
        })
        .collect::<Result<_>>()?;
    let depth = spectra.iter().map(|s| s.count()).max().unwrap_or(0);
    let path = args.output.out.as_deref();
    match args.output.format {
        Format::Csv => {
            let mut header = vec!["n".to_string()];
            header.extend(args.sizes.iter().map(|s| format!("size_{s}")));
            let body: Vec<Vec<String>> = (0..depth)
                .map(|n| {
                    let mut row = vec![n.to_string()];
                    row.extend(
                        spectra
                            .iter()
                            .map(|s| s.energy(n).map(fmt_sig).unwrap_or_default()),
                    );
                    row
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            write_csv(path, &header, &body)?;
        }
        Format::Json => {
            let columns: Vec<_> = args
                .sizes
                .iter()
                .zip(&spectra)
                .map(|(size, s)| {
                    json!({ "size": size, "energies": s.energies.iter().map(|&e| round_sig(e)).collect::<Vec<_>>(),
                            "diagnostics": s.diagnostics })
                })
                .collect();
            write_json(
                path,
                &json!({ "a": args.potential.a, "b": args.potential.b, "ell": args.ell,
                                      "lambda": args.lambda, "columns": columns }),
            )?;
        }
    }
    Ok(())
}

pub fn fit(args: &FitArgs) -> Result<()> {
    let base = Params::new(args.a, args.b, 0).map_err(usage)?;
    let spectra: BTreeMap<u32, Spectrum> = (0..=args.ell_max)
        .into_par_iter()
        .map(|ell| Ok((ell, tra_spectrum(&base.with_ell(ell))?)))
        .collect::<Result<_>>()?;
    let result = fit_spectrum_formula(&spectra);
    let path = args.output.out.as_deref();
    match args.output.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = result
                .levels
                .iter()
                .map(|l| {
                    vec![
                        l.level.to_string(),
                        fmt_sig(l.c0),
                        fmt_sig(l.c2),
                        fmt_sig(l.residual),
                        l.ell_count.to_string(),
                    ]
                })
                .collect();
            write_csv(path, &["n", "c0", "c2", "residual", "ell_count"], &body)?;
        }
        Format::Json => write_json(path, &result)?,
    }
    Ok(())
}

pub fn wavefunction(args: &WavefunctionArgs) -> Result<()> {
    let p = potential(&args.potential, args.ell)?;
    let r_min = args.r_min.unwrap_or(0.05 * p.a());
    let r_max = args.r_max.unwrap_or(20.0 * p.a());
    let grid = radial_grid(r_min, r_max, args.r_points).map_err(usage)?;
    let s = tra_spectrum(&p)?;
    let levels: Vec<usize> = if args.levels.is_empty() {
        (0..s.count()).collect()
    } else {
        args.levels.clone()
    };
    if let Some(&bad) = levels.iter().find(|&&k| k >= s.count()) {
        return Err(usage(format!(
            "level {bad} out of range: ℓ = {} has {} bound states",
            args.ell,
            s.count()
        )));
    }
    let norm = match args.normalize {
        NormArg::Unit => Normalization::Unit,
        NormArg::L2 => Normalization::L2,
    };
    let tables = levels
        .iter()
        .map(|&k| Ok((k, tra_wavefunction(&p, s.energies[k], &grid, norm)?)))
        .collect::<Result<Vec<_>>>()?;
    let path = args.output.out.as_deref();
    match args.output.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = tables
                .iter()
                .flat_map(|(k, w)| {
                    w.r.iter().zip(&w.psi).map(move |(r, v)| {
                        vec![
                            args.ell.to_string(),
                            k.to_string(),
                            fmt_sig(w.energy),
                            fmt_sig(*r),
                            fmt_sig(*v),
                        ]
                    })
                })
                .collect();
            write_csv(path, &["ell", "level", "energy", "r", "psi"], &body)?;
        }
        Format::Json => {
            let curves: Vec<_> = tables
                .iter()
                .map(|(k, w)| {
                    json!({ "level": k, "energy": round_sig(w.energy), "nodes": w.node_count(0.1),
                            "r": w.r.iter().map(|&x| round_sig(x)).collect::<Vec<_>>(),
                            "psi": w.psi.iter().map(|&x| round_sig(x)).collect::<Vec<_>>() })
                })
                .collect();
            write_json(
                path,
                &json!({ "a": p.a(), "b": p.b(), "ell": args.ell, "curves": curves }),
            )?;
        }
    }
    Ok(())
}

pub fn configure_threads(var: Option<String>) -> Result<()> {
    let Some(raw) = var else { return Ok(()) };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "SPECTRA_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(usage)
}
