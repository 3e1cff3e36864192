//! Solver output shared by the three methods.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SpectraError};
use crate::model::PotentialParams;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "TRA")]
    Tra,
    #[serde(rename = "Laguerre")]
    Laguerre,
    #[serde(rename = "FD")]
    Fd,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Tra, Method::Laguerre, Method::Fd];

    pub fn label(self) -> &'static str {
        match self {
            Method::Tra => "TRA",
            Method::Laguerre => "Laguerre",
            Method::Fd => "FD",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Method {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tra" => Ok(Method::Tra),
            "laguerre" | "lag" => Ok(Method::Laguerre),
            "fd" | "fdm" => Ok(Method::Fd),
            other => Err(SpectraError::InvalidParameter(format!(
                "unknown method `{other}`"
            ))),
        }
    }
}

/// Free-form diagnostic value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Diagnostic {
    Count(usize),
    Real(f64),
    Reals(Vec<f64>),
    Counts(Vec<usize>),
    Text(String),
}

impl From<usize> for Diagnostic {
    fn from(v: usize) -> Self {
        Diagnostic::Count(v)
    }
}

impl From<f64> for Diagnostic {
    fn from(v: f64) -> Self {
        Diagnostic::Real(v)
    }
}

impl From<Vec<f64>> for Diagnostic {
    fn from(v: Vec<f64>) -> Self {
        Diagnostic::Reals(v)
    }
}

impl From<Vec<usize>> for Diagnostic {
    fn from(v: Vec<usize>) -> Self {
        Diagnostic::Counts(v)
    }
}

impl From<&str> for Diagnostic {
    fn from(v: &str) -> Self {
        Diagnostic::Text(v.to_string())
    }
}

impl From<String> for Diagnostic {
    fn from(v: String) -> Self {
        Diagnostic::Text(v)
    }
}

/// Bound-state energies (negative, strictly ascending) from one solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult<T> {
    pub method: Method,
    pub energies: Vec<T>,
    pub params: PotentialParams<T>,
    pub diagnostics: BTreeMap<String, Diagnostic>,
}

impl<T: Real> SpectrumResult<T> {
    pub fn new(method: Method, energies: Vec<T>, params: PotentialParams<T>) -> Result<Self> {
        if let Some(e) = energies.iter().find(|e| !(**e < T::zero())) {
            return Err(SpectraError::InvariantViolation(format!(
                "bound energy {e} is not negative"
            )));
        }
        if energies.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(SpectraError::InvariantViolation(
                "bound energies are not strictly ascending".into(),
            ));
        }
        Ok(Self {
            method,
            energies,
            params,
            diagnostics: BTreeMap::new(),
        })
    }

    pub fn with_diagnostic(mut self, key: &str, value: impl Into<Diagnostic>) -> Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }

    pub fn count(&self) -> usize {
        self.energies.len()
    }

    pub fn energy(&self, level: usize) -> Option<T> {
        self.energies.get(level).copied()
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.energies.iter().map(|e| e.abs()).collect()
    }
}

pub(crate) fn to_f64s<T: Real>(v: &[T]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}
