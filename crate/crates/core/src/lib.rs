//! Delta-delta discretization of the finite Hilbert transform equation
//!
//! ```text
//! λ u(x) − (1/(iπ)) p.v.∫_a^b u(y)/(y − x) dy = f(x),   x ∈ (a, b)
//! ```
//!
//! on the midpoint mesh `x_m = a + (m − ½)h`. The discrete operator is the
//! Hermitian Toeplitz section with entries `1/(iπ(n − m))` and a zero
//! diagonal, independent of the mesh width.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line driver and parallel study execution live in `ddhilbert-cli`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod catalog;
mod error;
pub mod fft;
pub mod grid;
pub mod quadrature;
pub mod solver;
pub mod spectral;
pub mod toeplitz;

pub use num_complex::Complex64;

pub use analysis::{
    consistency_error, discrete_error, fit_loglog_slope, midpoint_defect, nystrom_reconstruct,
    pw_constant_l2_error, run_case, ConvergenceStudy, ErrorReport, Interior, NormKey,
};
pub use catalog::{CaseKind, ExactCase, SpectralParameter};
pub use error::{Error, Result};
pub use grid::{Cell, Grid};
pub use solver::{
    check_stability, solve, solve_dense, solve_levinson, DiscreteSystem, Method, SolveResult,
    SolverChoice,
};
pub use spectral::{rayleigh_scan, resolvent_probe, SpectralReport};
pub use toeplitz::{symbol, ToeplitzOperator};
