use std::path::PathBuf;

use ddhilbert::analysis::{run_case, CaseRun};
use ddhilbert::spectral::{rayleigh_scan, resolvent_probe, SpectralReport};
use ddhilbert::{ConvergenceStudy, ToeplitzOperator};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::StudyConfig;
use crate::error::{CliError, CliResult};
use crate::output::{self, StudyRow};

/// Solves for one `N` and returns the run.
pub fn solve_one(cfg: &StudyConfig, n: u64) -> CliResult<CaseRun> {
    let v = cfg.validate()?;
    Ok(run_case(&v.case, &v.lam, n, cfg.solver.into(), v.interior)?)
}

/// Writes `profile_N<N>` for the single `N` in `cfg.ns`.
pub fn cmd_solve(cfg: &StudyConfig) -> CliResult<Vec<PathBuf>> {
    let &[n] = cfg.ns.as_slice() else {
        return Err(CliError::validation("N", "solve takes exactly one N"));
    };
    let case = cfg.validate()?.case;
    let run = solve_one(cfg, n)?;
    let rows = output::profile_rows(&case, &run);
    let mut written = Vec::new();
    if cfg.format.csv() {
        written.push(output::write_file(
            &cfg.out,
            &format!("profile_N{n}.csv"),
            &output::profile_csv(&rows),
        )?);
    }
    if cfg.format.json() {
        written.push(output::write_file(
            &cfg.out,
            &format!("profile_N{n}.json"),
            &output::profile_json(cfg, n, &run, &rows),
        )?);
    }
    Ok(written)
}

/// Runs every `N` concurrently; reports come back in ascending `N`.
pub fn run_study(cfg: &StudyConfig) -> CliResult<ConvergenceStudy> {
    let v = cfg.validate()?;
    let reports = cfg
        .ns
        .par_iter()
        .map(|&n| run_case(&v.case, &v.lam, n, cfg.solver.into(), v.interior).map(|r| r.report))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConvergenceStudy::new(cfg.ns.clone(), reports)?)
}

/// Rendered study files as `(name, contents)`.
pub fn render_study(cfg: &StudyConfig) -> CliResult<Vec<(String, String)>> {
    let study = run_study(cfg)?;
    let rows: Vec<StudyRow> = output::study_rows(&study);
    let mut files = Vec::new();
    if cfg.format.csv() {
        files.push(("study.csv".to_string(), output::study_csv(&rows)));
    }
    if cfg.format.json() {
        files.push((
            "study.json".to_string(),
            output::study_json(cfg, &study, &rows),
        ));
    }
    Ok(files)
}

pub fn cmd_study(cfg: &StudyConfig) -> CliResult<Vec<PathBuf>> {
    render_study(cfg)?
        .into_iter()
        .map(|(name, body)| output::write_file(&cfg.out, &name, &body))
        .collect()
}

/// Parameters of a `spectrum` run.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    pub m: usize,
    pub samples: usize,
    pub trials: usize,
    pub lambdas: Vec<Complex64>,
    pub seed: u64,
    pub out: PathBuf,
}

/// `T` for any `M ≥ 1`; the 1×1 section is the zero matrix.
pub fn operator(m: usize) -> CliResult<ToeplitzOperator> {
    match m {
        0 => Err(CliError::validation("M", "must be at least 1")),
        1 => Ok(ToeplitzOperator::from_parts(
            vec![Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0)],
        )?),
        _ => Ok(ToeplitzOperator::assemble(m)?),
    }
}

pub fn run_spectrum(cfg: &SpectrumConfig) -> CliResult<SpectralReport> {
    if cfg.samples == 0 {
        return Err(CliError::validation("samples", "must be at least 1"));
    }
    if cfg.trials == 0 && !cfg.lambdas.is_empty() {
        return Err(CliError::validation("trials", "must be at least 1"));
    }
    let op = operator(cfg.m)?;
    let mut report = rayleigh_scan(&op, cfg.samples, cfg.seed);
    if !cfg.lambdas.is_empty() {
        // separate stream so the scan does not depend on the λ list
        let probe = resolvent_probe(&op, &cfg.lambdas, cfg.trials, cfg.seed.wrapping_add(1))
            .map_err(|e| match e {
                ddhilbert::Error::UnstableParameter { .. } => {
                    CliError::validation("lambda", e.to_string())
                }
                other => other.into(),
            })?;
        report.resolvent_samples = probe.resolvent_samples;
    }
    Ok(report)
}

pub fn cmd_spectrum(cfg: &SpectrumConfig) -> CliResult<PathBuf> {
    let report = run_spectrum(cfg)?;
    output::write_file(
        &cfg.out,
        &format!("spectrum_M{}.json", cfg.m),
        &output::spectrum_json(&report, cfg.samples, cfg.trials, cfg.seed),
    )
}
