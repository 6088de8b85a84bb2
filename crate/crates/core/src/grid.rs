//! Midpoint mesh on `(a, b)`.
//!
//! The interval is split into `M` cells of width `h = (b − a)/M` and the
//! nodes are the cell midpoints, so `a` and `b` themselves are never nodes.
//! All indices in this crate are zero-based: node `k` is
//! `x_k = a + (k + ½)h`.

// f64 math on targets without std
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Relative tolerance for accepting `(b − a)·N` as an integer.
pub const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    h: f64,
    nodes: Vec<f64>,
}

/// One mesh cell `[x_k − h/2, x_k + h/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
}

impl Cell {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

impl Grid {
    /// Mesh of `m` cells on `(a, b)`.
    pub fn new(a: f64, b: f64, m: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidMesh("interval endpoints must be finite"));
        }
        if b <= a {
            return Err(Error::InvalidMesh("interval length must be positive"));
        }
        if m < 2 {
            return Err(Error::InvalidMesh("at least two cells are required"));
        }
        Ok(Self::with_width(a, b, m, (b - a) / m as f64))
    }

    /// Mesh of width `h = 1/N`; `(b − a)·N` must be an integer.
    pub fn from_n(a: f64, b: f64, n: u64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidMesh("interval endpoints must be finite"));
        }
        if b <= a {
            return Err(Error::InvalidMesh("interval length must be positive"));
        }
        if n == 0 {
            return Err(Error::InvalidMesh("N must be positive"));
        }
        let cells = (b - a) * n as f64;
        let m = cells.round();
        if (cells - m).abs() > INTEGRALITY_TOL * cells {
            return Err(Error::MeshIncompatible { length: b - a, n });
        }
        if m < 2.0 {
            return Err(Error::InvalidMesh("at least two cells are required"));
        }
        Ok(Self::with_width(a, b, m as usize, 1.0 / n as f64))
    }

    fn with_width(a: f64, b: f64, m: usize, h: f64) -> Self {
        // closed form per node keeps x_k + x_{M-1-k} = a + b to rounding
        let nodes = (0..m).map(|k| a + (k as f64 + 0.5) * h).collect();
        Self { a, b, h, nodes }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `1/h`; equals `N` for meshes built with [`Grid::from_n`].
    pub fn n(&self) -> f64 {
        1.0 / self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> f64 {
        self.nodes[k]
    }

    /// Distances `(x_k − a, b − x_k)` computed from the cell count, free of
    /// the cancellation in `x_k − a`.
    pub fn offsets(&self, k: usize) -> (f64, f64) {
        let m = self.len();
        ((k as f64 + 0.5) * self.h, ((m - k) as f64 - 0.5) * self.h)
    }

    pub fn cell(&self, k: usize) -> Cell {
        let half = 0.5 * self.h;
        let x = self.nodes[k];
        Cell {
            index: k,
            lo: x - half,
            hi: x + half,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.len()).map(move |k| self.cell(k))
    }

    /// Indices `k` with `lo ≤ x_k ≤ hi`, ascending. May be empty.
    pub fn interior_indices(&self, lo: f64, hi: f64) -> Result<Vec<usize>> {
        if !(self.a <= lo && lo < hi && hi <= self.b) {
            return Err(Error::InvalidParameter {
                name: "interior",
                reason: "requires a <= lo < hi <= b",
            });
        }
        Ok(self
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, &x)| lo <= x && x <= hi)
            .map(|(k, _)| k)
            .collect())
    }

    /// Whether the mesh matches the interval `(a, b)` exactly.
    pub fn spans(&self, a: f64, b: f64) -> bool {
        self.a == a && self.b == b
    }
}
