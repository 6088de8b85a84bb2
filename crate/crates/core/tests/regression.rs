//! Values frozen from verified runs.

#![allow(clippy::excessive_precision)]

mod common;

use ddhilbert::analysis::nodal_values;
use ddhilbert::spectral::resolvent_probe;
use ddhilbert::{
    consistency_error, run_case, solve, Complex64, DiscreteSystem, ExactCase, Grid, Interior,
    SolverChoice, SpectralParameter, ToeplitzOperator,
};

const A: f64 = -0.15;
const B: f64 = 1.35;

fn close(got: f64, want: f64) -> bool {
    (got - want).abs() <= 1e-10 * want.abs()
}

#[test]
fn constant_case_at_n10() {
    let case = ExactCase::constant(A, B).unwrap();
    let lam = SpectralParameter::real(2.0).unwrap();
    let run = run_case(&case, &lam, 10, SolverChoice::Dense, Interior::default()).unwrap();
    let r = &run.report;
    let frozen = [
        (r.norm_c_l2, 5.27629092067619029e-2),
        (r.norm_c_linf, 3.68391183025917890e-2),
        (r.norm_disc_l2, 2.91442342755748596e-2),
        (r.norm_disc_l2_interior, 7.79211847398497259e-3),
        (r.norm_disc_scaled, 9.21621609723639358e-3),
        (r.norm_pw_l2, 9.21621609723639532e-3),
    ];
    for (i, (got, want)) in frozen.into_iter().enumerate() {
        assert!(close(got, want), "entry {i}: {got} vs {want}");
    }
    let u0 = run.solution.u[0];
    assert!(close(u0.re, 1.00044548916440168e0));
    assert!(close(u0.im, 1.95508435413161707e-2));

    let exact = nodal_values(&run.grid, &case);
    let sup = exact
        .iter()
        .zip(&run.solution.u)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    assert!(close(sup, 1.95559183822346626e-2));
}

#[test]
fn bump_interior_consistency_at_n1250() {
    // constant fitted on the nodes in [0, 1.2] at N = 1250; it grows with N,
    // so this is a regression bound for this mesh only
    const C: f64 = 6.58595507982938386e1;
    let case = ExactCase::sqrt_bump(A, B).unwrap();
    let g = Grid::from_n(A, B, 1250).unwrap();
    let c = consistency_error(&g, &case).unwrap();
    let h = g.h();
    let scale = h * h * (1.0 + h.ln().abs());
    for k in g.interior_indices(0.0, 1.2).unwrap() {
        assert!(c[k].norm() <= C * scale * (1.0 + 1e-9), "k={k}");
    }
}

#[test]
fn boundary_layer_energy_stays_bounded() {
    // h‖c‖² for the constant case; largest at N = 10 (2.7839e-4)
    const BOUND: f64 = 2.8e-4;
    let case = ExactCase::constant(A, B).unwrap();
    for n in [10u64, 30, 90, 270, 810, 2430] {
        let g = Grid::from_n(A, B, n).unwrap();
        let c = consistency_error(&g, &case).unwrap();
        let energy = g.h() * common::norm2(&c).powi(2);
        assert!(energy <= BOUND, "N={n}: {energy}");
    }
}

#[test]
fn resolvent_near_the_spectrum() {
    let op = ToeplitzOperator::assemble(405).unwrap();
    let lam = Complex64::new(1.0 + 1e-3, 0.0);

    // random right-hand sides see only part of the blow-up (observed 0.01405)
    let probe = resolvent_probe(&op, &[lam], 200, 1).unwrap();
    let ratio = probe.resolvent_samples[0].norm_ratio;
    assert!(ratio <= 1.0 + 1e-8);
    assert!(ratio >= 0.014, "{ratio}");

    // inverse iteration reaches the operator norm (observed 0.110853)
    let lam = SpectralParameter::new(lam).unwrap();
    let mut v = vec![Complex64::new(1.0, 0.0); 405];
    let mut ratio = 0.0;
    for _ in 0..30 {
        let n = common::norm2(&v);
        v.iter_mut().for_each(|z| *z /= n);
        let sol = solve(
            &DiscreteSystem::new(lam, &op, &v).unwrap(),
            SolverChoice::Dense,
        )
        .unwrap();
        ratio = sol.bound_ratio;
        v = sol.u;
    }
    assert!((0.1..=1.0 + 1e-8).contains(&ratio), "{ratio}");
}
