//! The discrete Hilbert operator as a Toeplitz section.
//!
//! `entry(m, n) = 1/(iπ(n − m))` for `m ≠ n` and zero on the diagonal. Row
//! index `m` is the evaluation node, column `n` the source node. Since
//! `h/(x_n − x_m) = 1/(n − m)` on a uniform mesh, the matrix does not depend
//! on the mesh width.

// f64 math on targets without std
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::fft::Radix2;
use crate::{Error, Result};

/// Sections at or below this size use the direct product in [`ToeplitzOperator::matvec`].
const DIRECT_MATVEC_MAX: usize = 64;

/// A Toeplitz matrix stored as its first row and first column.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzOperator {
    /// `row[k] = entry(0, k)`
    row: Vec<Complex64>,
    /// `col[k] = entry(k, 0)`
    col: Vec<Complex64>,
}

/// `1/(iπk)` for `k ≠ 0`, zero for `k = 0`.
pub fn hilbert_coefficient(k: i64) -> Complex64 {
    if k == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, -1.0 / (PI * k as f64))
    }
}

impl ToeplitzOperator {
    /// The `m × m` section of the discrete Hilbert operator.
    pub fn assemble(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Size(m));
        }
        let row = (0..m as i64).map(hilbert_coefficient).collect();
        let col = (0..m as i64).map(|k| hilbert_coefficient(-k)).collect();
        Ok(Self { row, col })
    }

    /// General Toeplitz matrix from its first row and column.
    pub fn from_parts(row: Vec<Complex64>, col: Vec<Complex64>) -> Result<Self> {
        if row.is_empty() {
            return Err(Error::Size(0));
        }
        if row.len() != col.len() {
            return Err(Error::Dimension {
                expected: row.len(),
                got: col.len(),
            });
        }
        if row[0] != col[0] {
            return Err(Error::InvalidParameter {
                name: "col",
                reason: "first row and column must share the diagonal entry",
            });
        }
        Ok(Self { row, col })
    }

    pub fn size(&self) -> usize {
        self.row.len()
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.row
    }

    pub fn first_col(&self) -> &[Complex64] {
        &self.col
    }

    /// Entry on diagonal offset `k = n − m`.
    pub fn diagonal(&self, k: isize) -> Complex64 {
        if k >= 0 {
            self.row[k as usize]
        } else {
            self.col[k.unsigned_abs()]
        }
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.diagonal(n as isize - m as isize)
    }

    /// `−T`.
    pub fn negated(&self) -> Self {
        Self {
            row: self.row.iter().map(|z| -z).collect(),
            col: self.col.iter().map(|z| -z).collect(),
        }
    }

    fn check_len(&self, v: &[Complex64]) -> Result<()> {
        if v.len() != self.size() {
            return Err(Error::Dimension {
                expected: self.size(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `O(M²)` reference product.
    pub fn matvec_direct(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v)?;
        let m = self.size();
        Ok((0..m)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &vj) in v.iter().enumerate() {
                    acc += self.entry(i, j) * vj;
                }
                acc
            })
            .collect())
    }

    /// `O(M log M)` product through a circulant embedding.
    pub fn matvec_fft(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v)?;
        Ok(CirculantEmbedding::new(self).apply_unchecked(v))
    }

    /// Product with the cheaper of the two routes for this size.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.size() <= DIRECT_MATVEC_MAX {
            self.matvec_direct(v)
        } else {
            self.matvec_fft(v)
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let m = self.size();
        let mut out = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                out.push(self.entry(i, j));
            }
        }
        out
    }
}

/// Spectrum of the circulant that embeds a Toeplitz section, reusable
/// across many products with the same operator.
#[derive(Debug, Clone)]
pub struct CirculantEmbedding {
    size: usize,
    plan: Radix2,
    spectrum: Vec<Complex64>,
}

impl CirculantEmbedding {
    pub fn new(op: &ToeplitzOperator) -> Self {
        let size = op.size();
        let len = (2 * size - 1).next_power_of_two();
        // circulant C[i][j] = c[(i − j) mod len]
        let mut c = vec![Complex64::new(0.0, 0.0); len];
        c[..size].copy_from_slice(&op.col);
        for k in 1..size {
            c[len - k] = op.row[k];
        }
        let plan = Radix2::new(len);
        plan.forward(&mut c);
        Self {
            size,
            plan,
            spectrum: c,
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.size {
            return Err(Error::Dimension {
                expected: self.size,
                got: v.len(),
            });
        }
        Ok(self.apply_unchecked(v))
    }

    fn apply_unchecked(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); self.plan.len()];
        buf[..self.size].copy_from_slice(v);
        self.plan.forward(&mut buf);
        for (z, s) in buf.iter_mut().zip(&self.spectrum) {
            *z *= s;
        }
        self.plan.inverse(&mut buf);
        buf.truncate(self.size);
        buf
    }
}

/// Partial Fourier sum `Σ_{m=1}^{terms} 2 sin(mτ)/(πm)` of the operator's
/// symbol, and its limit `sign τ − τ/π` (zero at `τ = 0`).
pub fn symbol(tau: f64, terms: usize) -> Result<(f64, f64)> {
    if !(tau > -PI && tau < PI) {
        return Err(Error::InvalidParameter {
            name: "tau",
            reason: "must lie in (-pi, pi)",
        });
    }
    if terms == 0 {
        return Err(Error::InvalidParameter {
            name: "terms",
            reason: "must be positive",
        });
    }
    // small terms first
    let partial: f64 = (1..=terms)
        .rev()
        .map(|m| 2.0 * (m as f64 * tau).sin() / (PI * m as f64))
        .sum();
    let closed = if tau == 0.0 {
        0.0
    } else {
        tau.signum() - tau / PI
    };
    Ok((partial, closed))
}
