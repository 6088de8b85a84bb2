//! Closed-form solution triples `(u, A u, f = λu − A u)`.
//!
//! `A` is the finite Hilbert transform `A u(x) = (1/(iπ)) p.v.∫ u(y)/(y − x) dy`
//! on `(a, b)`. Each case is scaled so that `u` is the plain real profile:
//!
//! | case       | `u(x)`                      | `A u(x)`                    |
//! |------------|-----------------------------|-----------------------------|
//! | `Constant` | `1`                         | `(i/π) log ρ`               |
//! | `SqrtBump` | `√((x − a)(b − x))`         | `i (x − (a + b)/2)`         |
//! | `Power`    | `sin(πα) ρ^α`               | `i (cos(πα) ρ^α − 1)`       |
//!
//! with `ρ = (x − a)/(b − x)`. All evaluations go through the endpoint
//! offsets `(x − a, b − x)` so the power case stays finite up to the last
//! representable point before `b`.

// f64 math on targets without std
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::{Error, Result};

/// Distance below which a spectral parameter counts as lying on `[−1, 1]`.
pub const MIN_SPECTRAL_DISTANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CaseKind {
    Constant,
    SqrtBump,
    Power { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactCase {
    kind: CaseKind,
    a: f64,
    b: f64,
}

impl ExactCase {
    pub fn new(kind: CaseKind, a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter {
                name: "interval",
                reason: "requires finite a < b",
            });
        }
        if let CaseKind::Power { alpha } = kind {
            if !(alpha > -0.5 && alpha < 0.5) {
                return Err(Error::InvalidParameter {
                    name: "alpha",
                    reason: "power exponent must lie in (-1/2, 1/2)",
                });
            }
        }
        Ok(Self { kind, a, b })
    }

    pub fn constant(a: f64, b: f64) -> Result<Self> {
        Self::new(CaseKind::Constant, a, b)
    }

    pub fn sqrt_bump(a: f64, b: f64) -> Result<Self> {
        Self::new(CaseKind::SqrtBump, a, b)
    }

    pub fn power(a: f64, b: f64, alpha: f64) -> Result<Self> {
        Self::new(CaseKind::Power { alpha }, a, b)
    }

    pub fn kind(&self) -> CaseKind {
        self.kind
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn offsets(&self, x: f64) -> Result<(f64, f64)> {
        if !(self.a < x && x < self.b) {
            return Err(Error::Domain {
                x,
                a: self.a,
                b: self.b,
            });
        }
        Ok((x - self.a, self.b - x))
    }

    pub fn eval_u(&self, x: f64) -> Result<Complex64> {
        self.offsets(x).map(|(da, db)| self.u_at(da, db))
    }

    pub fn eval_au(&self, x: f64) -> Result<Complex64> {
        self.offsets(x).map(|(da, db)| self.au_at(da, db))
    }

    pub fn eval_f(&self, lam: &SpectralParameter, x: f64) -> Result<Complex64> {
        self.offsets(x).map(|(da, db)| self.f_at(lam, da, db))
    }

    /// `u` at the point with offsets `da = x − a`, `db = b − x` (both > 0).
    pub fn u_at(&self, da: f64, db: f64) -> Complex64 {
        match self.kind {
            CaseKind::Constant => Complex64::new(1.0, 0.0),
            CaseKind::SqrtBump => Complex64::new((da * db).sqrt(), 0.0),
            CaseKind::Power { alpha } => {
                Complex64::new((PI * alpha).sin() * ratio_pow(alpha, da, db), 0.0)
            }
        }
    }

    /// `A u` at the point with offsets `da = x − a`, `db = b − x`.
    pub fn au_at(&self, da: f64, db: f64) -> Complex64 {
        match self.kind {
            CaseKind::Constant => Complex64::new(0.0, (da.ln() - db.ln()) / PI),
            // x − (a+b)/2 = (da − db)/2
            CaseKind::SqrtBump => Complex64::new(0.0, 0.5 * (da - db)),
            CaseKind::Power { alpha } => {
                Complex64::new(0.0, (PI * alpha).cos() * ratio_pow(alpha, da, db) - 1.0)
            }
        }
    }

    pub fn f_at(&self, lam: &SpectralParameter, da: f64, db: f64) -> Complex64 {
        lam.value() * self.u_at(da, db) - self.au_at(da, db)
    }
}

// ((x − a)/(b − x))^α without forming the ratio
fn ratio_pow(alpha: f64, da: f64, db: f64) -> f64 {
    (alpha * (da.ln() - db.ln())).exp()
}

/// Spectral parameter `λ` together with its distance to `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    lambda: Complex64,
    dist: f64,
}

impl SpectralParameter {
    /// Fails when `λ` is within [`MIN_SPECTRAL_DISTANCE`] of `[−1, 1]`,
    /// where the discrete scheme is not uniformly stable.
    pub fn new(lambda: Complex64) -> Result<Self> {
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: "must be finite",
            });
        }
        let dist = distance_to_segment(lambda);
        if dist < MIN_SPECTRAL_DISTANCE {
            return Err(Error::UnstableParameter { distance: dist });
        }
        Ok(Self { lambda, dist })
    }

    pub fn real(lambda: f64) -> Result<Self> {
        Self::new(Complex64::new(lambda, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.lambda
    }

    /// `dist(λ, [−1, 1])`.
    pub fn dist(&self) -> f64 {
        self.dist
    }
}

/// Euclidean distance from `z` to the real segment `[−1, 1]`.
pub fn distance_to_segment(z: Complex64) -> f64 {
    if (-1.0..=1.0).contains(&z.re) {
        z.im.abs()
    } else {
        (z - 1.0).norm().min((z + 1.0).norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    const A: f64 = -0.15;
    const B: f64 = 1.35;

    fn cases() -> [ExactCase; 3] {
        [
            ExactCase::constant(A, B).unwrap(),
            ExactCase::sqrt_bump(A, B).unwrap(),
            ExactCase::power(A, B, 0.25).unwrap(),
        ]
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn values_at_midpoint() {
        let mid = 0.5 * (A + B);
        let [c, s, p] = cases();
        assert_eq!(c.eval_u(0.3).unwrap(), Complex64::new(1.0, 0.0));
        assert!((s.eval_u(mid).unwrap().re - 0.5 * (B - A)).abs() < 1e-15);
        assert!((p.eval_u(mid).unwrap().re - 0.7071067811865476).abs() < 1e-15);

        assert!(c.eval_au(mid).unwrap().norm() < 1e-15);
        assert!(s.eval_au(mid).unwrap().norm() < 1e-15);
        let au = p.eval_au(mid).unwrap();
        assert_eq!(au.re, 0.0);
        assert!((au.im - ((PI / 4.0).cos() - 1.0)).abs() < 1e-15);
        assert!((au.im + 0.2928932188134524).abs() < 1e-15);
    }

    #[test]
    fn right_hand_sides() {
        let mid = 0.5 * (A + B);
        let lam = SpectralParameter::real(2.0).unwrap();
        let [c, s, _] = cases();
        assert!((c.eval_f(&lam, mid).unwrap() - 2.0).norm() < 1e-15);
        assert!((s.eval_f(&lam, mid).unwrap() - (B - A)).norm() < 1e-15);
    }

    #[test]
    fn power_rhs_constant_for_resonant_lambda() {
        // λ = i cot(πα); cot(π/4) = 1
        let lam = SpectralParameter::new(Complex64::new(0.0, 1.0)).unwrap();
        let p = ExactCase::power(A, B, 0.25).unwrap();
        let vals: Vec<_> = (1..200)
            .map(|k| p.eval_f(&lam, A + (B - A) * k as f64 / 200.0).unwrap())
            .collect();
        let scale = vals[0].norm();
        for v in &vals {
            assert!((v - vals[0]).norm() <= 1e-12 * scale);
        }
        for alpha in [-0.4, -0.1, 0.3, 0.45] {
            let lam =
                SpectralParameter::new(Complex64::new(0.0, 1.0 / (PI * alpha).tan())).unwrap();
            let p = ExactCase::power(A, B, alpha).unwrap();
            let f0 = p.eval_f(&lam, 0.0).unwrap();
            let f1 = p.eval_f(&lam, 1.3).unwrap();
            assert!((f0 - f1).norm() <= 1e-12 * f0.norm().max(1.0));
        }
    }

    #[test]
    fn power_vanishes_at_zero_exponent() {
        let p = ExactCase::power(A, B, 0.0).unwrap();
        for x in [-0.1, 0.4, 1.3499] {
            assert_eq!(p.eval_u(x).unwrap().norm(), 0.0);
            assert!(p.eval_au(x).unwrap().norm() < 1e-15);
        }
        let p = ExactCase::power(A, B, 1e-9).unwrap();
        assert!(p.eval_u(1.3).unwrap().norm() < 1e-8);
    }

    #[test]
    fn parity_about_midpoint() {
        let [c, s, _] = cases();
        for k in 1..100 {
            let da = (B - A) * k as f64 / 100.0;
            let db = (B - A) - da;
            for case in [c, s] {
                // mirrored offsets swap da and db
                assert_eq!(case.au_at(da, db), -case.au_at(db, da));
                let x = A + da;
                let l = case.eval_au(x).unwrap();
                let r = case.eval_au(A + B - x).unwrap();
                assert!((l + r).norm() <= 1e-14 * l.norm().max(1.0));
            }
        }
    }

    #[test]
    fn domain_and_parameter_errors() {
        let [c, _, _] = cases();
        assert!(matches!(c.eval_u(A), Err(Error::Domain { .. })));
        assert!(matches!(c.eval_au(2.0), Err(Error::Domain { .. })));
        assert!(ExactCase::power(A, B, 0.5).is_err());
        assert!(ExactCase::power(A, B, -0.5).is_err());
        assert!(ExactCase::constant(1.0, 0.0).is_err());
    }

    #[test]
    fn spectral_distance() {
        assert_eq!(SpectralParameter::real(2.0).unwrap().dist(), 1.0);
        assert_eq!(
            SpectralParameter::new(Complex64::new(0.0, 1.0))
                .unwrap()
                .dist(),
            1.0
        );
        assert!((distance_to_segment(Complex64::new(2.0, 1.0)) - 2f64.sqrt()).abs() < 1e-15);
        assert!((distance_to_segment(Complex64::new(-1.5, 0.0)) - 0.5).abs() < 1e-15);
        assert!(matches!(
            SpectralParameter::real(0.5),
            Err(Error::UnstableParameter { .. })
        ));
        assert!(matches!(
            SpectralParameter::real(1.0),
            Err(Error::UnstableParameter { .. })
        ));
        assert!(SpectralParameter::new(Complex64::new(0.3, 1e-11)).is_ok());
    }
}
