//! Fast invariant checks (all sections have `M ≤ 405`).

use std::f64::consts::PI;
use std::time::Instant;

use ddhilbert::analysis::{defect_bound, discrete_error, midpoint_defect, nodal_rhs, Interior};
use ddhilbert::spectral::{rayleigh_scan, resolvent_probe};
use ddhilbert::{
    solve, solve_dense, solve_levinson, symbol, DiscreteSystem, ExactCase, Grid, SolverChoice,
    SpectralParameter, ToeplitzOperator,
};
use num_complex::Complex64;

use crate::commands::render_study;
use crate::config::{Example, Format, StudyConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&Options) -> Result<String, String>;

/// `corrupt_sign` solves with the negated kernel so the residual check has
/// something to catch.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub corrupt_sign: bool,
}

const A: f64 = -0.15;
const B: f64 = 1.35;

fn cases() -> [ExactCase; 3] {
    [
        ExactCase::constant(A, B).unwrap(),
        ExactCase::sqrt_bump(A, B).unwrap(),
        ExactCase::power(A, B, 0.25).unwrap(),
    ]
}

fn residual_identity(opts: &Options) -> Result<String, String> {
    let lam = SpectralParameter::real(2.0).unwrap();
    let mut worst = 0.0f64;
    for case in cases() {
        for n in [10u64, 30, 90, 270] {
            let g = Grid::from_n(A, B, n).map_err(|e| e.to_string())?;
            let mut op = ToeplitzOperator::assemble(g.len()).map_err(|e| e.to_string())?;
            if opts.corrupt_sign {
                op = op.negated();
            }
            let rhs = nodal_rhs(&g, &case, &lam);
            let sys = DiscreteSystem::new(lam, &op, &rhs).map_err(|e| e.to_string())?;
            let sol = solve(&sys, SolverChoice::Dense).map_err(|e| e.to_string())?;
            let r = discrete_error(&g, &case, &lam, &sol.u, Interior::default())
                .map_err(|e| format!("{:?} N={n}: {e}", case.kind()))?;
            let rel = r.residual_identity / r.norm_c_l2;
            if rel.is_nan() || rel > 1e-10 {
                return Err(format!(
                    "{:?} N={n}: relative residual {rel:e}",
                    case.kind()
                ));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!("max relative residual {worst:.2e}"))
}

fn resolvent_bound(_: &Options) -> Result<String, String> {
    let lambdas = [
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.5, 0.0),
        Complex64::new(1.0, 1.0),
    ];
    let mut worst = 0.0f64;
    for m in [15, 45, 135] {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let rep = resolvent_probe(&op, &lambdas, 20, 7).map_err(|e| e.to_string())?;
        for s in rep.resolvent_samples {
            if s.norm_ratio.is_nan() || s.norm_ratio > 1.0 + 1e-8 {
                return Err(format!("M={m} λ={}: ratio {}", s.lambda, s.norm_ratio));
            }
            worst = worst.max(s.norm_ratio);
        }
    }
    if SpectralParameter::real(0.5).is_ok() {
        return Err("λ = 0.5 accepted".into());
    }
    Ok(format!("max ratio {worst:.6}"))
}

fn defect_bounds(_: &Options) -> Result<String, String> {
    for n in [10u64, 30, 90, 270] {
        let g = Grid::from_n(A, B, n).unwrap();
        let s = midpoint_defect(&g);
        let bound = defect_bound(&g);
        let m = g.len();
        let mid = 0.5 * (A + B);
        for k in 0..m {
            if s[k].abs() > bound[k] + 1e-14 {
                return Err(format!("M={m} k={k}: |s| {} > {}", s[k].abs(), bound[k]));
            }
            if (s[k] + s[m - 1 - k]).abs() > 1e-12 {
                return Err(format!("M={m} k={k}: not antisymmetric"));
            }
            let x = g.node(k);
            let ok = if 2 * k + 1 == m {
                s[k] == 0.0
            } else if x < mid {
                s[k] > 0.0
            } else {
                s[k] < 0.0
            };
            if !ok {
                return Err(format!("M={m} k={k}: sign pattern broken"));
            }
        }
    }
    Ok("M = 15, 45, 135, 405".into())
}

fn solver_equivalence(_: &Options) -> Result<String, String> {
    let mut worst = 0.0f64;
    for m in [15, 135, 405] {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let f: Vec<Complex64> = (0..m)
            .map(|k| Complex64::new((k as f64 * 0.7).sin(), (k as f64 * 0.3).cos()))
            .collect();
        for lam in [2.0, -1.5] {
            let lam = SpectralParameter::real(lam).unwrap();
            let sys = DiscreteSystem::new(lam, &op, &f).unwrap();
            let d = solve_dense(&sys).map_err(|e| e.to_string())?;
            let l = solve_levinson(&sys).map_err(|e| e.to_string())?;
            let num: f64 = d.u.iter().zip(&l.u).map(|(x, y)| (x - y).norm_sqr()).sum();
            let den: f64 = d.u.iter().map(|x| x.norm_sqr()).sum();
            let rel = (num / den).sqrt();
            if rel.is_nan() || rel > 1e-8 {
                return Err(format!("M={m}: relative difference {rel:e}"));
            }
            worst = worst.max(rel);
        }
    }
    Ok(format!("max relative difference {worst:.2e}"))
}

fn fft_matvec(_: &Options) -> Result<String, String> {
    for m in [2, 17, 256] {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let v: Vec<Complex64> = (0..m)
            .map(|k| Complex64::new(1.0 / (k + 1) as f64, (k as f64).cos()))
            .collect();
        let d = op.matvec_direct(&v).unwrap();
        let f = op.matvec_fft(&v).unwrap();
        let num: f64 = d.iter().zip(&f).map(|(x, y)| (x - y).norm_sqr()).sum();
        let den: f64 = d.iter().map(|x| x.norm_sqr()).sum();
        let rel = (num / den).sqrt();
        if rel.is_nan() || rel > 1e-11 {
            return Err(format!("M={m}: mismatch"));
        }
    }
    Ok("M = 2, 17, 256".into())
}

fn numerical_range(_: &Options) -> Result<String, String> {
    for m in [15, 135] {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let r = rayleigh_scan(&op, 1000, 11);
        if r.rayleigh_min < -1.0 - 1e-10 || r.rayleigh_max > 1.0 + 1e-10 {
            return Err(format!("M={m}: [{}, {}]", r.rayleigh_min, r.rayleigh_max));
        }
        if r.max_imag_rayleigh > 1e-10 {
            return Err(format!("M={m}: imaginary part {}", r.max_imag_rayleigh));
        }
    }
    let r = rayleigh_scan(&ToeplitzOperator::assemble(2).unwrap(), 1000, 11);
    if r.rayleigh_max > 1.0 / PI + 1e-10 || r.rayleigh_min < -1.0 / PI - 1e-10 {
        return Err("M=2 outside ±1/π".into());
    }
    Ok("M = 2, 15, 135".into())
}

fn symbol_identity(_: &Options) -> Result<String, String> {
    let mut worst = 0.0f64;
    for tau in [PI / 2.0, -PI / 2.0, 1.0, -1.0] {
        let (partial, closed) = symbol(tau, 100_000).map_err(|e| e.to_string())?;
        worst = worst.max((partial - closed).abs());
    }
    if worst > 1e-4 {
        return Err(format!("deviation {worst:e}"));
    }
    Ok(format!("max deviation {worst:.2e}"))
}

fn determinism(_: &Options) -> Result<String, String> {
    let cfg = StudyConfig {
        example: Example::Power,
        ns: vec![10, 30, 90],
        format: Format::Both,
        ..StudyConfig::default()
    };
    let first = render_study(&cfg).map_err(|e| e.to_string())?;
    let second = render_study(&cfg).map_err(|e| e.to_string())?;
    if first != second {
        return Err("study output differs between runs".into());
    }
    Ok("study rendered twice, identical bytes".into())
}

const CHECKS: [(&str, Check); 8] = [
    ("residual identity", residual_identity),
    ("resolvent bound", resolvent_bound),
    ("midpoint defect bounds", defect_bounds),
    ("levinson vs dense", solver_equivalence),
    ("fft matvec vs direct", fft_matvec),
    ("numerical range", numerical_range),
    ("symbol partial sums", symbol_identity),
    ("deterministic output", determinism),
];

pub fn run(opts: &Options) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let (passed, detail) = match check(opts) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                name,
                passed,
                detail,
            }
        })
        .collect()
}

/// Runs all checks, printing one table row per check; true iff all pass.
pub fn run_and_print(opts: &Options) -> bool {
    let start = Instant::now();
    let outcomes = run(opts);
    println!("{:<24} {:<6} detail", "check", "result");
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("{:<24} {mark:<6} {}", o.name, o.detail);
    }
    let all = outcomes.iter().all(|o| o.passed);
    let verdict = if all { "all passed" } else { "FAILED" };
    println!("{verdict} in {:.1} s", start.elapsed().as_secs_f64());
    all
}
