//! Randomized checks of the numerical range and resolvent of `T`.
//!
//! Every Rayleigh quotient `⟨v, Tv⟩` of a unit vector must be real and lie in
//! `[−1, 1]`, and `‖(λI − T)⁻¹‖ ≤ dist(λ, [−1, 1])⁻¹`. Both are sampled with
//! a seeded ChaCha8 stream so reports are reproducible bit for bit.

// f64 math on targets without std
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::solver::{check_stability, solve, DiscreteSystem, SolverChoice};
use crate::toeplitz::{CirculantEmbedding, ToeplitzOperator};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventSample {
    pub lambda: Complex64,
    /// `max ‖U‖₂ · dist(λ, [−1, 1]) / ‖F‖₂` over the trials
    pub norm_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub m: usize,
    pub rayleigh_min: f64,
    pub rayleigh_max: f64,
    pub max_imag_rayleigh: f64,
    pub resolvent_samples: Vec<ResolventSample>,
}

impl SpectralReport {
    /// Report covering only the coordinate vectors, whose Rayleigh
    /// quotients are the (zero) diagonal entries.
    pub fn coordinate(op: &ToeplitzOperator) -> Self {
        let diag = op.diagonal(0);
        Self {
            m: op.size(),
            rayleigh_min: diag.re,
            rayleigh_max: diag.re,
            max_imag_rayleigh: diag.im.abs(),
            resolvent_samples: Vec::new(),
        }
    }

    fn record(&mut self, q: Complex64) {
        self.rayleigh_min = self.rayleigh_min.min(q.re);
        self.rayleigh_max = self.rayleigh_max.max(q.re);
        self.max_imag_rayleigh = self.max_imag_rayleigh.max(q.im.abs());
    }
}

/// Unit vector with i.i.d. uniform real and imaginary parts in `[−1, 1)`.
pub fn random_unit_vector<R: Rng>(rng: &mut R, m: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

fn rayleigh_with(apply: &dyn Fn(&[Complex64]) -> Vec<Complex64>, v: &[Complex64]) -> Complex64 {
    let tv = apply(v);
    v.iter().zip(&tv).map(|(x, y)| x.conj() * y).sum()
}

/// `⟨v, Tv⟩` for a unit vector `v`.
pub fn rayleigh_quotient(op: &ToeplitzOperator, v: &[Complex64]) -> Result<Complex64> {
    let tv = op.matvec(v)?;
    Ok(v.iter().zip(&tv).map(|(x, y)| x.conj() * y).sum())
}

fn applier(op: &ToeplitzOperator) -> impl Fn(&[Complex64]) -> Vec<Complex64> + '_ {
    let emb = (op.size() > 64).then(|| CirculantEmbedding::new(op));
    move |v: &[Complex64]| match &emb {
        Some(e) => e.apply(v).expect("length checked by caller"),
        None => op.matvec_direct(v).expect("length checked by caller"),
    }
}

/// Rayleigh extremes over the given unit vectors plus the coordinate vectors.
pub fn rayleigh_scan_vectors<'v, I>(op: &ToeplitzOperator, vectors: I) -> Result<SpectralReport>
where
    I: IntoIterator<Item = &'v [Complex64]>,
{
    let mut report = SpectralReport::coordinate(op);
    let apply = applier(op);
    for v in vectors {
        if v.len() != op.size() {
            return Err(crate::Error::Dimension {
                expected: op.size(),
                got: v.len(),
            });
        }
        report.record(rayleigh_with(&apply, v));
    }
    Ok(report)
}

/// Rayleigh extremes over `samples` seeded random unit vectors plus the
/// coordinate vectors.
pub fn rayleigh_scan(op: &ToeplitzOperator, samples: usize, seed: u64) -> SpectralReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SpectralReport::coordinate(op);
    let apply = applier(op);
    for _ in 0..samples {
        let v = random_unit_vector(&mut rng, op.size());
        report.record(rayleigh_with(&apply, &v));
    }
    report
}

/// Largest observed `‖U‖·dist(λ)/‖F‖` for each `λ` over `trials` random
/// right-hand sides. The Rayleigh fields cover the coordinate vectors only.
pub fn resolvent_probe(
    op: &ToeplitzOperator,
    lambdas: &[Complex64],
    trials: usize,
    seed: u64,
) -> Result<SpectralReport> {
    let params = lambdas
        .iter()
        .map(|&l| check_stability(l))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SpectralReport::coordinate(op);
    for lam in params {
        let mut worst = 0.0f64;
        for _ in 0..trials {
            let f = random_unit_vector(&mut rng, op.size());
            let sol = solve(&DiscreteSystem::new(lam, op, &f)?, SolverChoice::Auto)?;
            worst = worst.max(sol.bound_ratio);
        }
        report.resolvent_samples.push(ResolventSample {
            lambda: lam.value(),
            norm_ratio: worst,
        });
    }
    Ok(report)
}
