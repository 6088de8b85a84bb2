//! Solvers for `(λI − T)U = F`.
//!
//! [`solve_dense`] factors the materialized matrix with partial pivoting and
//! serves as the reference. [`solve_levinson`] runs the `O(M²)` Levinson
//! recursion for general (non-Hermitian) Toeplitz matrices; it needs every
//! leading section to be invertible, which holds here because each leading
//! section of `T` again has its numerical range inside `[−1, 1]`.

// f64 math on targets without std
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::catalog::SpectralParameter;
use crate::toeplitz::{CirculantEmbedding, ToeplitzOperator};
use crate::{Error, Result};

/// Accepted relative residual for `dist(λ, [−1, 1]) ≥ 1`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Levinson results above this residual get a refinement sweep.
pub const REFINE_THRESHOLD: f64 = 1e-9;
pub const MAX_REFINEMENT_SWEEPS: usize = 2;
/// Below this distance to `[−1, 1]` results are flagged as near-spectrum.
pub const NEAR_SPECTRUM: f64 = 1e-3;
/// `Auto` uses the dense factorization up to this size.
pub const DENSE_MAX_AUTO: usize = 512;

const BREAKDOWN_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dense,
    Levinson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverChoice {
    #[default]
    Auto,
    Dense,
    Levinson,
}

/// `(λI − op) U = rhs`.
#[derive(Debug, Clone, Copy)]
pub struct DiscreteSystem<'a> {
    lam: SpectralParameter,
    op: &'a ToeplitzOperator,
    rhs: &'a [Complex64],
}

impl<'a> DiscreteSystem<'a> {
    pub fn new(
        lam: SpectralParameter,
        op: &'a ToeplitzOperator,
        rhs: &'a [Complex64],
    ) -> Result<Self> {
        if rhs.len() != op.size() {
            return Err(Error::Dimension {
                expected: op.size(),
                got: rhs.len(),
            });
        }
        Ok(Self { lam, op, rhs })
    }

    pub fn lam(&self) -> SpectralParameter {
        self.lam
    }

    pub fn op(&self) -> &ToeplitzOperator {
        self.op
    }

    pub fn rhs(&self) -> &[Complex64] {
        self.rhs
    }

    pub fn size(&self) -> usize {
        self.op.size()
    }

    /// Entry of `λI − T` on diagonal offset `k = n − m`.
    fn coefficient(&self, k: isize) -> Complex64 {
        let t = self.op.diagonal(k);
        if k == 0 {
            self.lam.value() - t
        } else {
            -t
        }
    }

    /// `(λI − T) v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let tv = self.op.matvec(v)?;
        let lam = self.lam.value();
        Ok(v.iter().zip(tv).map(|(&x, y)| lam * x - y).collect())
    }

    fn residual_tolerance(&self) -> f64 {
        RESIDUAL_TOL / self.lam.dist().min(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub u: Vec<Complex64>,
    pub method: Method,
    /// `‖(λI − T)U − F‖₂ / ‖F‖₂`
    pub residual_rel: f64,
    /// `‖U‖₂ · dist(λ, [−1, 1]) / ‖F‖₂`; at most one by the resolvent bound.
    pub bound_ratio: f64,
    /// Levinson broke down and the dense factorization was used instead.
    pub fell_back: bool,
    pub near_spectrum: bool,
    pub refinement_sweeps: usize,
}

fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn residual(sys: &DiscreteSystem<'_>, u: &[Complex64], av: Vec<Complex64>) -> Vec<Complex64> {
    debug_assert_eq!(u.len(), av.len());
    sys.rhs.iter().zip(av).map(|(f, y)| f - y).collect()
}

fn finish(
    sys: &DiscreteSystem<'_>,
    u: Vec<Complex64>,
    method: Method,
    residual_rel: f64,
    fell_back: bool,
    refinement_sweeps: usize,
) -> Result<SolveResult> {
    let fnorm = norm2(sys.rhs);
    let bound_ratio = if fnorm == 0.0 {
        0.0
    } else {
        norm2(&u) * sys.lam.dist() / fnorm
    };
    let tolerance = sys.residual_tolerance();
    if residual_rel.is_nan() || residual_rel > tolerance {
        return Err(Error::Inaccurate {
            residual: residual_rel,
            tolerance,
        });
    }
    Ok(SolveResult {
        u,
        method,
        residual_rel,
        bound_ratio,
        fell_back,
        near_spectrum: sys.lam.dist() < NEAR_SPECTRUM,
        refinement_sweeps,
    })
}

fn relative(r: &[Complex64], f: &[Complex64]) -> f64 {
    let fnorm = norm2(f);
    let rnorm = norm2(r);
    if fnorm == 0.0 {
        rnorm
    } else {
        rnorm / fnorm
    }
}

/// Validates `λ` against the stability condition `λ ∉ [−1, 1]`.
pub fn check_stability(lam: Complex64) -> Result<SpectralParameter> {
    SpectralParameter::new(lam)
}

/// LU factorization with partial (row) pivoting of a dense square matrix.
#[derive(Debug, Clone)]
pub struct DenseLu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl DenseLu {
    /// Factors the row-major `n × n` matrix `a`.
    pub fn factor(n: usize, mut a: Vec<Complex64>) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: a.len(),
            });
        }
        let scale = a.iter().fold(0.0f64, |s, z| s.max(z.norm()));
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmag) =
                (k..n)
                    .map(|i| (i, a[i * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pmag.is_nan() || pmag <= scale * 1e-15 {
                return Err(Error::NumericalSingularity { pivot: pmag });
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let inv = a[k * n + k].inv();
            for i in k + 1..n {
                let l = a[i * n + k] * inv;
                a[i * n + k] = l;
                if l != Complex64::new(0.0, 0.0) {
                    let (upper, lower) = a.split_at_mut(i * n);
                    let pivot_row = &upper[k * n + k + 1..k * n + n];
                    for (x, &y) in lower[k + 1..n].iter_mut().zip(pivot_row) {
                        *x -= l * y;
                    }
                }
            }
        }
        Ok(Self { n, lu: a, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if b.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: b.len(),
            });
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let dot: Complex64 = row.iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= dot;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let dot: Complex64 = row.iter().zip(&x[i + 1..]).map(|(l, y)| l * y).sum();
            x[i] = (x[i] - dot) / self.lu[i * n + i];
        }
        Ok(x)
    }
}

fn dense_raw(sys: &DiscreteSystem<'_>) -> Result<Vec<Complex64>> {
    let m = sys.size();
    let mut a = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            a.push(sys.coefficient(j as isize - i as isize));
        }
    }
    DenseLu::factor(m, a)?.solve(sys.rhs)
}

/// Dense partial-pivot solve, `O(M³)`.
pub fn solve_dense(sys: &DiscreteSystem<'_>) -> Result<SolveResult> {
    let u = dense_raw(sys)?;
    let av = sys.op.matvec_direct(&u)?;
    let lam = sys.lam.value();
    let av: Vec<_> = u.iter().zip(av).map(|(&x, y)| lam * x - y).collect();
    let r = residual(sys, &u, av);
    let rel = relative(&r, sys.rhs);
    finish(sys, u, Method::Dense, rel, false, 0)
}

/// Levinson recursion for `A x = y` with `A[i][j] = coef(j − i)`.
/// Returns `None` on breakdown of a reflection denominator.
fn levinson_raw(sys: &DiscreteSystem<'_>, y: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = sys.size();
    let pos: Vec<Complex64> = (0..n as isize).map(|k| sys.coefficient(k)).collect();
    let neg: Vec<Complex64> = (0..n as isize).map(|k| sys.coefficient(-k)).collect();
    let scale = pos.iter().chain(&neg).fold(0.0f64, |s, z| s.max(z.norm()));

    let r0 = pos[0];
    if r0.norm() < BREAKDOWN_TOL * scale {
        return None;
    }
    // forward: A_k f = e_first, backward: A_k b = e_last
    let mut f = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut x = Vec::with_capacity(n);
    f.push(r0.inv());
    b.push(r0.inv());
    x.push(y[0] / r0);
    let mut nf = vec![Complex64::new(0.0, 0.0); n];
    let mut nb = vec![Complex64::new(0.0, 0.0); n];

    for k in 1..n {
        // last row of A_{k+1} against [f; 0], first row against [0; b]
        let mut ef = Complex64::new(0.0, 0.0);
        let mut ex = Complex64::new(0.0, 0.0);
        let mut eb = Complex64::new(0.0, 0.0);
        for j in 0..k {
            let last_row = neg[k - j];
            ef += last_row * f[j];
            ex += last_row * x[j];
            eb += pos[j + 1] * b[j];
        }
        let denom = Complex64::new(1.0, 0.0) - ef * eb;
        if denom.norm() < BREAKDOWN_TOL {
            return None;
        }
        let inv = denom.inv();
        // [f;0] and [0;b] combined
        for j in 0..=k {
            let fj = if j < k {
                f[j]
            } else {
                Complex64::new(0.0, 0.0)
            };
            let bj = if j > 0 {
                b[j - 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            nf[j] = (fj - ef * bj) * inv;
            nb[j] = (bj - eb * fj) * inv;
        }
        f.clear();
        f.extend_from_slice(&nf[..=k]);
        b.clear();
        b.extend_from_slice(&nb[..=k]);
        let step = y[k] - ex;
        x.push(Complex64::new(0.0, 0.0));
        for (xj, bj) in x.iter_mut().zip(&b) {
            *xj += step * bj;
        }
    }
    Some(x)
}

/// Toeplitz solve in `O(M²)` with FFT-residual refinement; falls back to
/// [`solve_dense`] if the recursion breaks down.
pub fn solve_levinson(sys: &DiscreteSystem<'_>) -> Result<SolveResult> {
    let Some(mut u) = levinson_raw(sys, sys.rhs) else {
        let mut res = solve_dense(sys)?;
        res.fell_back = true;
        return Ok(res);
    };
    let emb = CirculantEmbedding::new(sys.op);
    let lam = sys.lam.value();
    let residual_of = |u: &[Complex64]| -> Vec<Complex64> {
        let tu = emb.apply(u).expect("length checked");
        sys.rhs
            .iter()
            .zip(u.iter().zip(tu))
            .map(|(f, (&x, y))| f - (lam * x - y))
            .collect()
    };
    let mut r = residual_of(&u);
    let mut rel = relative(&r, sys.rhs);
    let mut sweeps = 0;
    while rel > REFINE_THRESHOLD && sweeps < MAX_REFINEMENT_SWEEPS {
        let Some(d) = levinson_raw(sys, &r) else {
            break;
        };
        for (x, dx) in u.iter_mut().zip(d) {
            *x += dx;
        }
        sweeps += 1;
        r = residual_of(&u);
        rel = relative(&r, sys.rhs);
    }
    finish(sys, u, Method::Levinson, rel, false, sweeps)
}

/// Dispatches on `choice`; `Auto` is dense up to [`DENSE_MAX_AUTO`] unknowns.
pub fn solve(sys: &DiscreteSystem<'_>, choice: SolverChoice) -> Result<SolveResult> {
    match choice {
        SolverChoice::Dense => solve_dense(sys),
        SolverChoice::Levinson => solve_levinson(sys),
        SolverChoice::Auto if sys.size() <= DENSE_MAX_AUTO => solve_dense(sys),
        SolverChoice::Auto => solve_levinson(sys),
    }
}
