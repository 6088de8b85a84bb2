//! Error diagnostics for the delta-delta scheme.
//!
//! For an exact solution `u` the consistency error is
//! `c = R A u − T R u`, the midpoint-rule defect of the principal-value
//! integral at each node, and the discrete error `E = R u − U` satisfies
//! `(λI − T) E = c`. The piecewise-constant error `e = u − Σ U_k χ_k` is
//! measured in `L²(a, b)`.

// f64 math on targets without std
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::catalog::{ExactCase, SpectralParameter};
use crate::grid::Grid;
use crate::quadrature::GaussLegendre;
use crate::solver::{solve, DiscreteSystem, SolveResult, SolverChoice};
use crate::toeplitz::ToeplitzOperator;
use crate::{Error, Result};

/// Gauss points per cell for the `L²` error.
pub const DEFAULT_GAUSS_POINTS: usize = 8;
/// Minimum halvings of each boundary cell toward its endpoint.
pub const BOUNDARY_REFINEMENT_DEPTH: u32 = 40;
/// Halvings allowed while the extrapolated tail is still significant.
pub const BOUNDARY_REFINEMENT_MAX_DEPTH: u32 = 400;
/// Tolerance of the error-equation check, relative to `1 + ‖c‖₂`.
pub const RESIDUAL_IDENTITY_TOL: f64 = 1e-10;

/// Subinterval on which the interior `ℓ²` norm of `E` is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interior {
    pub lo: f64,
    pub hi: f64,
}

impl Default for Interior {
    fn default() -> Self {
        Self { lo: 0.0, hi: 1.2 }
    }
}

/// Midpoint defect `s_j` of the constant function at every node.
///
/// `s_j = log((b − x_j)/(x_j − a)) − Σ_{k≠j} 1/(k − j)`. Symmetric pairs
/// `k, 2j − k` cancel exactly and are never summed; the remaining one-sided
/// harmonic tail is accumulated from the middle node outward, so the whole
/// vector costs `O(M)` and `s_{M−1−j} = −s_j` holds bit for bit.
pub fn midpoint_defect(g: &Grid) -> Vec<f64> {
    let m = g.len();
    let mut s = alloc::vec![0.0; m];
    let mid = (m - 1) / 2;
    // tail(k) = Σ_{d = k+1}^{m-1-k} 1/d for k ≤ mid
    let mut tail = if m % 2 == 1 {
        0.0
    } else {
        1.0 / (m / 2) as f64
    };
    for k in (0..=mid).rev() {
        if k < mid {
            tail += 1.0 / (k + 1) as f64 + 1.0 / (m - 1 - k) as f64;
        }
        let v = log_ratio(m, k) - tail;
        s[k] = v;
        s[m - 1 - k] = -v;
    }
    if m % 2 == 1 {
        s[mid] = 0.0;
    }
    s
}

/// `s_j` for a single node by direct `O(M)` summation.
pub fn midpoint_defect_at(g: &Grid, k: usize) -> f64 {
    let m = g.len();
    let left = k;
    let right = m - 1 - k;
    let (lo, hi, sign) = if left <= right {
        (left + 1, right, 1.0)
    } else {
        (right + 1, left, -1.0)
    };
    // smallest terms first
    let tail: f64 = (lo..=hi).rev().map(|d| 1.0 / d as f64).sum();
    log_ratio(m, k) - sign * tail
}

// log((b − x_k)/(x_k − a)) = log(2(m − k) − 1) − log(2k + 1)
fn log_ratio(m: usize, k: usize) -> f64 {
    ((2 * (m - k) - 1) as f64).ln() - ((2 * k + 1) as f64).ln()
}

/// Upper bound `(h²/8)·|1/(x_j − a)² − 1/(b − x_j)²|` for `|s_j|`.
pub fn defect_bound(g: &Grid) -> Vec<f64> {
    let h2 = g.h() * g.h();
    (0..g.len())
        .map(|k| {
            let (da, db) = g.offsets(k);
            h2 / 8.0 * (1.0 / (da * da) - 1.0 / (db * db)).abs()
        })
        .collect()
}

fn check_interval(g: &Grid, case: &ExactCase) -> Result<()> {
    let (a, b) = case.interval();
    if !g.spans(a, b) {
        return Err(Error::InvalidParameter {
            name: "case",
            reason: "exact case interval differs from the mesh interval",
        });
    }
    Ok(())
}

/// `R u`: exact solution at the nodes.
pub fn nodal_values(g: &Grid, case: &ExactCase) -> Vec<Complex64> {
    (0..g.len())
        .map(|k| {
            let (da, db) = g.offsets(k);
            case.u_at(da, db)
        })
        .collect()
}

/// `F_m = f(x_m)`.
pub fn nodal_rhs(g: &Grid, case: &ExactCase, lam: &SpectralParameter) -> Vec<Complex64> {
    (0..g.len())
        .map(|k| {
            let (da, db) = g.offsets(k);
            case.f_at(lam, da, db)
        })
        .collect()
}

/// Consistency error `c_m = A u(x_m) − (T R u)_m`.
pub fn consistency_error(g: &Grid, case: &ExactCase) -> Result<Vec<Complex64>> {
    check_interval(g, case)?;
    let op = ToeplitzOperator::assemble(g.len())?;
    consistency_error_with(g, &op, case)
}

fn consistency_error_with(
    g: &Grid,
    op: &ToeplitzOperator,
    case: &ExactCase,
) -> Result<Vec<Complex64>> {
    let tu = op.matvec(&nodal_values(g, case))?;
    Ok(tu
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            let (da, db) = g.offsets(k);
            case.au_at(da, db) - t
        })
        .collect())
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Diagnostics for one mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// `N = 1/h`
    pub n: f64,
    pub m: usize,
    /// consistency error `c`
    pub consistency: Vec<Complex64>,
    /// discrete error `E = R u − U`
    pub discrete: Vec<Complex64>,
    /// midpoint defect `s`
    pub defect: Vec<f64>,
    pub norm_c_l2: f64,
    pub norm_c_linf: f64,
    pub norm_disc_l2: f64,
    pub norm_disc_l2_interior: f64,
    /// `N^{−1/2} ‖E‖₂`
    pub norm_disc_scaled: f64,
    /// `‖u − Σ U_k χ_k‖_{L²(a,b)}`
    pub norm_pw_l2: f64,
    /// `‖(λI − T) E − c‖₂`
    pub residual_identity: f64,
}

/// Builds the [`ErrorReport`] for a computed solution `u` of the system with
/// right-hand side `f(x_m)`, and checks the error equation.
pub fn discrete_error(
    g: &Grid,
    case: &ExactCase,
    lam: &SpectralParameter,
    u: &[Complex64],
    interior: Interior,
) -> Result<ErrorReport> {
    check_interval(g, case)?;
    if u.len() != g.len() {
        return Err(Error::Dimension {
            expected: g.len(),
            got: u.len(),
        });
    }
    let op = ToeplitzOperator::assemble(g.len())?;
    let c = consistency_error_with(g, &op, case)?;
    let e: Vec<Complex64> = nodal_values(g, case)
        .iter()
        .zip(u)
        .map(|(x, y)| x - y)
        .collect();

    let sys_e = DiscreteSystem::new(*lam, &op, &e)?;
    let lhs = sys_e.apply(&e)?;
    let diff: Vec<Complex64> = lhs.iter().zip(&c).map(|(x, y)| x - y).collect();
    let residual_identity = norm2(&diff);
    let norm_c_l2 = norm2(&c);
    let tolerance = RESIDUAL_IDENTITY_TOL * (1.0 + norm_c_l2) / lam.dist().min(1.0);
    if residual_identity.is_nan() || residual_identity > tolerance {
        return Err(Error::InternalConsistency {
            residual: residual_identity,
            tolerance,
        });
    }

    let inner = g.interior_indices(interior.lo, interior.hi)?;
    let norm_disc_l2_interior = inner.iter().map(|&k| e[k].norm_sqr()).sum::<f64>().sqrt();
    let norm_disc_l2 = norm2(&e);
    Ok(ErrorReport {
        n: g.n(),
        m: g.len(),
        norm_c_linf: norm_inf(&c),
        norm_c_l2,
        norm_disc_l2,
        norm_disc_l2_interior,
        norm_disc_scaled: norm_disc_l2 / g.n().sqrt(),
        norm_pw_l2: pw_constant_l2_error(g, case, u)?,
        residual_identity,
        consistency: c,
        discrete: e,
        defect: midpoint_defect(g),
    })
}

/// `L²(a, b)` distance between `u` and the piecewise-constant function with
/// cell values `coeffs`, using the default 8-point rule.
pub fn pw_constant_l2_error(g: &Grid, case: &ExactCase, coeffs: &[Complex64]) -> Result<f64> {
    pw_constant_l2_error_with(g, case, coeffs, &GaussLegendre::new(DEFAULT_GAUSS_POINTS))
}

/// As [`pw_constant_l2_error`] with an explicit per-cell rule. The two
/// boundary cells are split geometrically (ratio ½, at least 40 levels)
/// toward `a` and `b`, and the piece left at the end is summed as a
/// geometric tail, which resolves integrable endpoint singularities of `|u|²`.
pub fn pw_constant_l2_error_with(
    g: &Grid,
    case: &ExactCase,
    coeffs: &[Complex64],
    rule: &GaussLegendre,
) -> Result<f64> {
    check_interval(g, case)?;
    let m = g.len();
    if coeffs.len() != m {
        return Err(Error::Dimension {
            expected: m,
            got: coeffs.len(),
        });
    }
    let h = g.h();
    let len = m as f64 * h;
    // integrand in terms of the distance t to one endpoint
    let from_a = |c: Complex64| move |t: f64| (case.u_at(t, len - t) - c).norm_sqr();
    let from_b = |c: Complex64| move |t: f64| (case.u_at(len - t, t) - c).norm_sqr();

    let boundary = |g: &mut dyn FnMut(f64) -> f64| -> f64 {
        let mut acc = 0.0;
        let mut hi = h;
        let (mut prev, mut last) = (0.0, 0.0);
        for level in 0..BOUNDARY_REFINEMENT_MAX_DEPTH {
            let lo = 0.5 * hi;
            prev = last;
            last = rule.integrate(lo, hi, &mut *g);
            acc += last;
            hi = lo;
            if level + 1 >= BOUNDARY_REFINEMENT_DEPTH {
                match geometric_tail(prev, last) {
                    Some(t) if t <= 1e-17 * acc => return acc + t,
                    None if last == 0.0 => return acc,
                    _ => {}
                }
            }
        }
        acc + geometric_tail(prev, last).unwrap_or_else(|| rule.integrate(0.0, hi, &mut *g))
    };

    let mut total = boundary(&mut from_a(coeffs[0]));
    total += boundary(&mut from_b(coeffs[m - 1]));
    for (k, &c) in coeffs.iter().enumerate().take(m - 1).skip(1) {
        total += rule.integrate(k as f64 * h, (k + 1) as f64 * h, from_a(c));
    }
    Ok(total.sqrt())
}

// Mass left below the last piece. Piece integrals of t^β decay with ratio
// 2^{−(1+β)}, so the remainder is the geometric tail of the last two.
fn geometric_tail(prev: f64, last: f64) -> Option<f64> {
    let q = last / prev;
    (prev > 0.0 && q.is_finite() && (0.0..1.0).contains(&q)).then(|| last * q / (1.0 - q))
}

/// Nyström extension `(f(x) + (1/(iπ)) Σ_n h U_n/(x_n − x)) / λ` of the
/// nodal solution to an arbitrary point.
pub fn nystrom_reconstruct<F>(
    g: &Grid,
    lam: &SpectralParameter,
    u: &[Complex64],
    f: F,
    x: f64,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if u.len() != g.len() {
        return Err(Error::Dimension {
            expected: g.len(),
            got: u.len(),
        });
    }
    if !(g.a() < x && x < g.b()) {
        return Err(Error::Domain {
            x,
            a: g.a(),
            b: g.b(),
        });
    }
    let h = g.h();
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, (&xn, &un)) in g.nodes().iter().zip(u).enumerate() {
        let d = xn - x;
        if d.abs() < 1e-12 * h {
            return Err(Error::PoleProximity {
                x,
                node: k,
                distance: d.abs(),
            });
        }
        sum += un * (h / d);
    }
    // 1/(iπ) = −i/π
    let integral = Complex64::new(0.0, -1.0 / PI) * sum;
    Ok((f(x) + integral) / lam.value())
}

/// Norm families tracked in a convergence study; names match the study
/// CSV columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKey {
    CL2,
    CLinf,
    EL2,
    EL2Interior,
    EScaled,
    PwL2,
}

impl NormKey {
    pub const ALL: [NormKey; 6] = [
        NormKey::CL2,
        NormKey::CLinf,
        NormKey::EL2,
        NormKey::EL2Interior,
        NormKey::EScaled,
        NormKey::PwL2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NormKey::CL2 => "norm_c_l2",
            NormKey::CLinf => "norm_c_linf",
            NormKey::EL2 => "norm_E_l2",
            NormKey::EL2Interior => "norm_E_l2_interior",
            NormKey::EScaled => "norm_E_scaled",
            NormKey::PwL2 => "norm_e_L2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn value(self, r: &ErrorReport) -> f64 {
        match self {
            NormKey::CL2 => r.norm_c_l2,
            NormKey::CLinf => r.norm_c_linf,
            NormKey::EL2 => r.norm_disc_l2,
            NormKey::EL2Interior => r.norm_disc_l2_interior,
            NormKey::EScaled => r.norm_disc_scaled,
            NormKey::PwL2 => r.norm_pw_l2,
        }
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Dimension {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::DegenerateData("need at least two points"));
    }
    if xs.iter().chain(ys).any(|&v| !v.is_finite() || v <= 0.0) {
        return Err(Error::DegenerateData("values must be positive and finite"));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateData("abscissae are all equal"));
    }
    Ok(sxy / sxx)
}

/// Reports for an increasing sequence of `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    ns: Vec<u64>,
    reports: Vec<ErrorReport>,
    slope_window: usize,
}

impl ConvergenceStudy {
    /// The slope window defaults to all points but the first.
    pub fn new(ns: Vec<u64>, reports: Vec<ErrorReport>) -> Result<Self> {
        if ns.len() != reports.len() {
            return Err(Error::Dimension {
                expected: ns.len(),
                got: reports.len(),
            });
        }
        if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter {
                name: "Ns",
                reason: "must be nonempty and strictly increasing",
            });
        }
        let slope_window = ns.len().saturating_sub(1);
        Ok(Self {
            ns,
            reports,
            slope_window,
        })
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.slope_window = window.min(self.ns.len());
        self
    }

    pub fn ns(&self) -> &[u64] {
        &self.ns
    }

    pub fn reports(&self) -> &[ErrorReport] {
        &self.reports
    }

    pub fn slope_window(&self) -> usize {
        self.slope_window
    }

    /// Log-log slope of `key` over the trailing window (at least 3 points).
    pub fn fit_rate(&self, key: NormKey) -> Result<f64> {
        if self.slope_window < 3 {
            return Err(Error::DegenerateData(
                "slope window holds fewer than 3 points",
            ));
        }
        let start = self.ns.len() - self.slope_window;
        let xs: Vec<f64> = self.ns[start..].iter().map(|&n| n as f64).collect();
        let ys: Vec<f64> = self.reports[start..].iter().map(|r| key.value(r)).collect();
        fit_loglog_slope(&xs, &ys)
    }

    /// Slope per norm family; `None` where the fit is not defined.
    pub fn slopes(&self) -> Vec<(NormKey, Option<f64>)> {
        NormKey::ALL
            .into_iter()
            .map(|k| (k, self.fit_rate(k).ok()))
            .collect()
    }
}

/// Everything computed for one `(case, N)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRun {
    pub grid: Grid,
    pub rhs: Vec<Complex64>,
    pub solution: SolveResult,
    pub report: ErrorReport,
}

/// Meshes `(a, b)` with `h = 1/N`, solves the discrete system for the exact
/// case and evaluates all diagnostics.
pub fn run_case(
    case: &ExactCase,
    lam: &SpectralParameter,
    n: u64,
    choice: SolverChoice,
    interior: Interior,
) -> Result<CaseRun> {
    let (a, b) = case.interval();
    let grid = Grid::from_n(a, b, n)?;
    let op = ToeplitzOperator::assemble(grid.len())?;
    let rhs = nodal_rhs(&grid, case, lam);
    let solution = solve(&DiscreteSystem::new(*lam, &op, &rhs)?, choice)?;
    let report = discrete_error(&grid, case, lam, &solution.u, interior)?;
    Ok(CaseRun {
        grid,
        rhs,
        solution,
        report,
    })
}
