//! CSV and JSON renderings of run results.
//!
//! CSV floats use 17 significant digits in scientific notation (`{:.16e}`);
//! JSON floats use the shortest representation that round-trips. Both are
//! exact, so identical inputs give byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ddhilbert::analysis::{CaseRun, NormKey};
use ddhilbert::spectral::SpectralReport;
use ddhilbert::{ConvergenceStudy, ExactCase};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{Example, Format, Solver, StudyConfig};
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const PROFILE_COLUMNS: [&str; 11] = [
    "m", "x", "u_re", "u_im", "f_re", "f_im", "U_re", "U_im", "c_abs", "E_abs", "s",
];

pub const STUDY_COLUMNS: [&str; 8] = [
    "N",
    "M",
    "norm_c_l2",
    "norm_c_linf",
    "norm_E_l2",
    "norm_E_l2_interior",
    "norm_E_scaled",
    "norm_e_L2",
];

pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub a: f64,
    pub b: f64,
    pub lambda: JsonComplex,
    pub example: Example,
    pub alpha: Option<f64>,
    #[serde(rename = "Ns")]
    pub ns: Vec<u64>,
    pub interior: [f64; 2],
    pub format: Format,
    pub seed: u64,
    pub solver: Solver,
}

impl From<&StudyConfig> for ConfigEcho {
    fn from(c: &StudyConfig) -> Self {
        Self {
            a: c.a,
            b: c.b,
            lambda: c.lambda.into(),
            example: c.example,
            alpha: (c.example == Example::Power).then_some(c.alpha),
            ns: c.ns.clone(),
            interior: [c.interior.0, c.interior.1],
            format: c.format,
            seed: c.seed,
            solver: c.solver,
        }
    }
}

/// One node of a solved profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub m: usize,
    pub x: f64,
    pub u_re: f64,
    pub u_im: f64,
    pub f_re: f64,
    pub f_im: f64,
    #[serde(rename = "U_re")]
    pub big_u_re: f64,
    #[serde(rename = "U_im")]
    pub big_u_im: f64,
    pub c_abs: f64,
    #[serde(rename = "E_abs")]
    pub e_abs: f64,
    pub s: f64,
}

/// Rows ordered by node, `m` counted from 1.
pub fn profile_rows(case: &ExactCase, run: &CaseRun) -> Vec<ProfileRow> {
    let g = &run.grid;
    (0..g.len())
        .map(|k| {
            let (da, db) = g.offsets(k);
            let u = case.u_at(da, db);
            let f = run.rhs[k];
            let big_u = run.solution.u[k];
            ProfileRow {
                m: k + 1,
                x: g.node(k),
                u_re: u.re,
                u_im: u.im,
                f_re: f.re,
                f_im: f.im,
                big_u_re: big_u.re,
                big_u_im: big_u.im,
                c_abs: run.report.consistency[k].norm(),
                e_abs: run.report.discrete[k].norm(),
                s: run.report.defect[k],
            }
        })
        .collect()
}

pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = PROFILE_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        let vals = [
            r.x, r.u_re, r.u_im, r.f_re, r.f_im, r.big_u_re, r.big_u_im, r.c_abs, r.e_abs, r.s,
        ];
        write!(out, "{}", r.m).unwrap();
        for v in vals {
            write!(out, ",{}", fmt_float(v)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ProfileJson<'a> {
    schema_version: u32,
    version: &'a str,
    config: ConfigEcho,
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "M")]
    m: usize,
    solver_method: &'a str,
    residual_rel: f64,
    rows: &'a [ProfileRow],
}

pub fn profile_json(cfg: &StudyConfig, n: u64, run: &CaseRun, rows: &[ProfileRow]) -> String {
    let doc = ProfileJson {
        schema_version: SCHEMA_VERSION,
        version: VERSION,
        config: cfg.into(),
        n,
        m: run.grid.len(),
        solver_method: method_name(run),
        residual_rel: run.solution.residual_rel,
        rows,
    };
    to_json(&doc)
}

fn method_name(run: &CaseRun) -> &'static str {
    match run.solution.method {
        ddhilbert::Method::Dense => "dense",
        ddhilbert::Method::Levinson => "levinson",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StudyRow {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M")]
    pub m: usize,
    pub norm_c_l2: f64,
    pub norm_c_linf: f64,
    #[serde(rename = "norm_E_l2")]
    pub norm_e_l2: f64,
    #[serde(rename = "norm_E_l2_interior")]
    pub norm_e_l2_interior: f64,
    #[serde(rename = "norm_E_scaled")]
    pub norm_e_scaled: f64,
    #[serde(rename = "norm_e_L2")]
    pub norm_pw_l2: f64,
}

pub fn study_rows(study: &ConvergenceStudy) -> Vec<StudyRow> {
    study
        .ns()
        .iter()
        .zip(study.reports())
        .map(|(&n, r)| StudyRow {
            n,
            m: r.m,
            norm_c_l2: r.norm_c_l2,
            norm_c_linf: r.norm_c_linf,
            norm_e_l2: r.norm_disc_l2,
            norm_e_l2_interior: r.norm_disc_l2_interior,
            norm_e_scaled: r.norm_disc_scaled,
            norm_pw_l2: r.norm_pw_l2,
        })
        .collect()
}

pub fn study_csv(rows: &[StudyRow]) -> String {
    let mut out = STUDY_COLUMNS.join(",");
    out.push('\n');
    for r in rows {
        write!(out, "{},{}", r.n, r.m).unwrap();
        for v in [
            r.norm_c_l2,
            r.norm_c_linf,
            r.norm_e_l2,
            r.norm_e_l2_interior,
            r.norm_e_scaled,
            r.norm_pw_l2,
        ] {
            write!(out, ",{}", fmt_float(v)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct StudyJson<'a> {
    schema_version: u32,
    version: &'a str,
    config: ConfigEcho,
    slope_window: usize,
    rows: &'a [StudyRow],
    slopes: serde_json::Map<String, serde_json::Value>,
}

pub fn study_json(cfg: &StudyConfig, study: &ConvergenceStudy, rows: &[StudyRow]) -> String {
    let slopes = study
        .slopes()
        .into_iter()
        .map(|(k, s): (NormKey, Option<f64>)| (k.name().to_string(), serde_json::json!(s)))
        .collect();
    let doc = StudyJson {
        schema_version: SCHEMA_VERSION,
        version: VERSION,
        config: cfg.into(),
        slope_window: study.slope_window(),
        rows,
        slopes,
    };
    to_json(&doc)
}

#[derive(Serialize)]
struct ResolventJson {
    lambda: JsonComplex,
    dist: f64,
    norm_ratio: f64,
}

#[derive(Serialize)]
struct SpectrumJson<'a> {
    schema_version: u32,
    version: &'a str,
    #[serde(rename = "M")]
    m: usize,
    samples: usize,
    trials: usize,
    seed: u64,
    rayleigh_min: f64,
    rayleigh_max: f64,
    max_imag_rayleigh: f64,
    resolvent_samples: Vec<ResolventJson>,
}

pub fn spectrum_json(report: &SpectralReport, samples: usize, trials: usize, seed: u64) -> String {
    let doc = SpectrumJson {
        schema_version: SCHEMA_VERSION,
        version: VERSION,
        m: report.m,
        samples,
        trials,
        seed,
        rayleigh_min: report.rayleigh_min,
        rayleigh_max: report.rayleigh_max,
        max_imag_rayleigh: report.max_imag_rayleigh,
        resolvent_samples: report
            .resolvent_samples
            .iter()
            .map(|s| ResolventJson {
                lambda: s.lambda.into(),
                dist: ddhilbert::catalog::distance_to_segment(s.lambda),
                norm_ratio: s.norm_ratio,
            })
            .collect(),
    };
    to_json(&doc)
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report values serialize");
    s.push('\n');
    s
}

/// Creates `dir` if needed and writes `name` inside it.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
