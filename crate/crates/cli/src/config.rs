use std::path::PathBuf;

use ddhilbert::{ExactCase, Grid, Interior, SolverChoice, SpectralParameter};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const DEFAULT_A: f64 = -0.15;
pub const DEFAULT_B: f64 = 1.35;
pub const DEFAULT_LAMBDA: f64 = 2.0;
pub const DEFAULT_ALPHA: f64 = 0.25;
pub const DEFAULT_INTERIOR: (f64, f64) = (0.0, 1.2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Example {
    Const,
    Bump,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Auto,
    Dense,
    Levinson,
}

impl From<Solver> for SolverChoice {
    fn from(s: Solver) -> Self {
        match s {
            Solver::Auto => SolverChoice::Auto,
            Solver::Dense => SolverChoice::Dense,
            Solver::Levinson => SolverChoice::Levinson,
        }
    }
}

/// `N = 10·3^j` for `j = 0..=jmax`.
pub fn default_ns(large: bool) -> Vec<u64> {
    let jmax = if large { 6 } else { 4 };
    (0..=jmax).map(|j| 10 * 3u64.pow(j)).collect()
}

/// Parameters of a `solve` or `study` run.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub a: f64,
    pub b: f64,
    pub lambda: Complex64,
    pub example: Example,
    pub alpha: f64,
    pub ns: Vec<u64>,
    pub interior: (f64, f64),
    pub out: PathBuf,
    pub format: Format,
    pub seed: u64,
    pub solver: Solver,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            a: DEFAULT_A,
            b: DEFAULT_B,
            lambda: Complex64::new(DEFAULT_LAMBDA, 0.0),
            example: Example::Const,
            alpha: DEFAULT_ALPHA,
            ns: default_ns(false),
            interior: DEFAULT_INTERIOR,
            out: PathBuf::from("."),
            format: Format::Both,
            seed: 0,
            solver: Solver::Auto,
        }
    }
}

/// Checked pieces of a [`StudyConfig`].
#[derive(Debug, Clone, Copy)]
pub struct Validated {
    pub case: ExactCase,
    pub lam: SpectralParameter,
    pub interior: Interior,
}

impl StudyConfig {
    pub fn case(&self) -> CliResult<ExactCase> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) {
            return Err(CliError::validation("a", "interval needs finite a < b"));
        }
        let case = match self.example {
            Example::Const => ExactCase::constant(self.a, self.b),
            Example::Bump => ExactCase::sqrt_bump(self.a, self.b),
            Example::Power => ExactCase::power(self.a, self.b, self.alpha),
        };
        Ok(case?)
    }

    pub fn validate(&self) -> CliResult<Validated> {
        let case = self.case()?;
        if self.ns.is_empty() {
            return Err(CliError::validation("Ns", "needs at least one value"));
        }
        if self.ns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::validation("Ns", "must be strictly increasing"));
        }
        for &n in &self.ns {
            Grid::from_n(self.a, self.b, n)
                .map_err(|e| CliError::validation("N", e.to_string()))?;
        }
        let lam = SpectralParameter::new(self.lambda)
            .map_err(|e| CliError::validation("lambda", e.to_string()))?;
        let (lo, hi) = self.interior;
        if !(self.a <= lo && lo < hi && hi <= self.b) {
            return Err(CliError::validation(
                "interior",
                format!("[{lo}, {hi}] must satisfy a <= lo < hi <= b"),
            ));
        }
        Ok(Validated {
            case,
            lam,
            interior: Interior { lo, hi },
        })
    }
}

fn parse_f64(field: &'static str, s: &str) -> CliResult<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| CliError::validation(field, format!("'{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::validation(field, "must be finite"));
    }
    Ok(v)
}

/// `re,im` or a bare real part.
pub fn parse_complex(s: &str) -> CliResult<Complex64> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(
            parse_f64("lambda", re)?,
            parse_f64("lambda", im)?,
        )),
        None => Ok(Complex64::new(parse_f64("lambda", s)?, 0.0)),
    }
}

pub fn parse_pair(s: &str) -> CliResult<(f64, f64)> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| CliError::validation("interior", "expected lo,hi"))?;
    Ok((parse_f64("interior", lo)?, parse_f64("interior", hi)?))
}

pub fn parse_ns(s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::validation("Ns", format!("'{t}' is not a positive integer")))
        })
        .collect()
}
