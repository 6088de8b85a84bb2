//! Structural invariants, checked on fixed meshes and by property tests.

mod common;

use common::{loglog_slope, norm2, rel_diff};
use ddhilbert::analysis::{defect_bound, nodal_rhs, nodal_values};
use ddhilbert::spectral::{random_unit_vector, rayleigh_scan_vectors, resolvent_probe};
use ddhilbert::{
    consistency_error, midpoint_defect, nystrom_reconstruct, run_case, solve_dense, solve_levinson,
    Complex64, DiscreteSystem, ExactCase, Grid, Interior, SolverChoice, SpectralParameter,
    ToeplitzOperator,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const A: f64 = -0.15;
const B: f64 = 1.35;

fn lam2() -> SpectralParameter {
    SpectralParameter::real(2.0).unwrap()
}

#[test]
fn defect_bound_sign_and_antisymmetry() {
    for n in [10u64, 30, 90, 270] {
        let g = Grid::from_n(A, B, n).unwrap();
        let m = g.len();
        assert!([15, 45, 135, 405].contains(&m));
        let s = midpoint_defect(&g);
        let bound = defect_bound(&g);
        let mid = 0.5 * (A + B);
        for j in 0..m {
            assert!(s[j].abs() <= bound[j] + 1e-14, "M={m} j={j}");
            assert!((s[m - 1 - j] + s[j]).abs() <= 1e-12);
            let x = g.node(j);
            if 2 * j + 1 == m {
                assert_eq!(s[j], 0.0);
            } else if x < mid {
                assert!(s[j] > 0.0, "M={m} j={j}");
            } else {
                assert!(s[j] < 0.0, "M={m} j={j}");
            }
        }
    }
}

#[test]
fn defect_boundary_layer() {
    let eps: f64 = 1e-3;
    let g = Grid::from_n(A, B, 270).unwrap();
    let width = g.h() / (2.0 * eps).sqrt() * (1.0 + 1e-6);
    let s = midpoint_defect(&g);
    let mut hits = 0;
    for (j, sj) in s.iter().enumerate() {
        if sj.abs() > eps {
            hits += 1;
            let (da, db) = g.offsets(j);
            assert!(da.min(db) <= width, "j={j}");
        }
    }
    assert!(hits > 0);
}

#[test]
fn constant_case_defect_identity() {
    // iπ c = s for u ≡ 1
    let case = ExactCase::constant(A, B).unwrap();
    for n in [10u64, 90] {
        let g = Grid::from_n(A, B, n).unwrap();
        let c = consistency_error(&g, &case).unwrap();
        for (cj, sj) in c.iter().zip(midpoint_defect(&g)) {
            let ipc = Complex64::new(0.0, std::f64::consts::PI) * cj;
            assert!((ipc - sj).norm() <= 1e-13 * (1.0 + sj.abs()));
        }
    }
}

#[test]
fn bump_consistency_decays() {
    let case = ExactCase::sqrt_bump(A, B).unwrap();
    let ns = [10u64, 30, 90, 270];
    let sup: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let g = Grid::from_n(A, B, n).unwrap();
            consistency_error(&g, &case)
                .unwrap()
                .iter()
                .fold(0.0f64, |m, z| m.max(z.norm()))
        })
        .collect();
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = loglog_slope(&xs, &sup);
    assert!(slope <= -0.4, "slope {slope}");
}

#[test]
fn constant_case_does_not_converge() {
    let case = ExactCase::constant(A, B).unwrap();
    let at = |n| run_case(&case, &lam2(), n, SolverChoice::Auto, Interior::default()).unwrap();
    let (coarse, fine) = (at(10).report, at(270).report);
    assert!(fine.norm_c_l2 >= 0.5 * coarse.norm_c_l2);
    assert!(fine.norm_disc_l2 >= 0.5 * coarse.norm_disc_l2);
}

#[test]
fn nystrom_extension_between_nodes() {
    let case = ExactCase::constant(A, B).unwrap();
    let lam = lam2();
    let run = run_case(&case, &lam, 90, SolverChoice::Dense, Interior::default()).unwrap();
    let g = &run.grid;
    let f = |x: f64| case.eval_f(&lam, x).unwrap();
    let mid = 0.5 * (A + B);
    // off the grid the midpoint sum picks up the lattice term
    // Σ_k 1/(k − t) = −π cot(πt), so u⁽ᴺ⁾(x_m + t h) ≈ 1 + i cot(πt)/λ;
    // the term vanishes on cell edges
    for t in [-0.5, -0.25, 0.25, 0.5] {
        let x = mid + t * g.h();
        let u = nystrom_reconstruct(g, &lam, &run.solution.u, f, x).unwrap();
        let cot = (std::f64::consts::PI * t).cos() / (std::f64::consts::PI * t).sin();
        let expected = 1.0 + Complex64::new(0.0, cot) / lam.value();
        assert!((u - expected).norm() <= 1e-2, "t={t}: {u} vs {expected}");
    }
    // at a node with its own term dropped the extension is the system row
    let u = &run.solution.u;
    for m in [0, 44, 89] {
        let sum: Complex64 = (0..g.len())
            .filter(|&n| n != m)
            .map(|n| u[n] / (n as f64 - m as f64))
            .sum();
        let row =
            (run.rhs[m] + Complex64::new(0.0, -1.0 / std::f64::consts::PI) * sum) / lam.value();
        assert!((row - u[m]).norm() <= 1e-12);
    }
}

#[test]
fn rayleigh_extremes_grow_along_nested_sections() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut vectors: Vec<Vec<Complex64>> = Vec::new();
    let mut last = (0.0f64, 0.0f64);
    for m in [15usize, 45, 135] {
        // previous vectors padded with zeros, plus fresh ones
        for v in vectors.iter_mut() {
            v.resize(m, Complex64::new(0.0, 0.0));
        }
        vectors.extend((0..300).map(|_| random_unit_vector(&mut rng, m)));
        let op = ToeplitzOperator::assemble(m).unwrap();
        let r = rayleigh_scan_vectors(&op, vectors.iter().map(Vec::as_slice)).unwrap();
        // the embedded quotients agree up to rounding of the two matvec paths
        assert!(r.rayleigh_max >= last.1 - 1e-13, "M={m}");
        assert!(r.rayleigh_min <= last.0 + 1e-13, "M={m}");
        assert!(r.rayleigh_max <= 1.0 + 1e-10 && r.rayleigh_min >= -1.0 - 1e-10);
        last = (r.rayleigh_min, r.rayleigh_max);
    }
}

#[test]
fn rayleigh_quotients_stay_in_unit_interval() {
    for m in [16usize, 512, 2048] {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let r = ddhilbert::rayleigh_scan(&op, 1000, m as u64);
        assert!(r.max_imag_rayleigh <= 1e-12, "M={m}");
        assert!(r.rayleigh_min >= -1.0 - 1e-12 && r.rayleigh_max <= 1.0 + 1e-12, "M={m}");
    }
}

fn case_strategy() -> impl Strategy<Value = ExactCase> {
    prop_oneof![
        Just(ExactCase::constant(A, B).unwrap()),
        Just(ExactCase::sqrt_bump(A, B).unwrap()),
        (-0.45f64..0.45).prop_map(|al| ExactCase::power(A, B, al).unwrap()),
    ]
}

/// `λ` at distance at least 0.05 from `[−1, 1]`.
fn lambda_strategy() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, 0.05f64..2.0, any::<bool>()).prop_map(|(re, im, up)| {
        if re.abs() > 1.05 && !up {
            Complex64::new(re, 0.0)
        } else {
            Complex64::new(re, if up { im } else { -im })
        }
    })
}

fn vector(m: usize, seed: u64) -> Vec<Complex64> {
    random_unit_vector(&mut ChaCha8Rng::seed_from_u64(seed), m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn toeplitz_is_hermitian_and_skew_persymmetric(m in 2usize..120, seed in any::<u64>()) {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let v = vector(m, seed);
        let w = vector(m, seed ^ 1);
        let tv = op.matvec(&v).unwrap();
        let tw = op.matvec(&w).unwrap();
        let lhs: Complex64 = v.iter().zip(&tw).map(|(x, y)| x.conj() * y).sum();
        let rhs: Complex64 = tv.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
        prop_assert!((lhs - rhs).norm() <= 1e-13);
        for i in 0..m {
            for j in 0..m {
                prop_assert_eq!(op.entry(m - 1 - i, m - 1 - j), -op.entry(i, j));
            }
        }
    }

    #[test]
    fn fft_and_direct_matvec_agree(m in 1usize..700, seed in any::<u64>()) {
        let op = if m == 1 {
            ToeplitzOperator::from_parts(vec![Complex64::new(0.0, 0.0)], vec![Complex64::new(0.0, 0.0)]).unwrap()
        } else {
            ToeplitzOperator::assemble(m).unwrap()
        };
        let v = vector(m, seed);
        let d = op.matvec_direct(&v).unwrap();
        let f = op.matvec_fft(&v).unwrap();
        let scale = norm2(&d).max(1e-300);
        let diff: Vec<_> = d.iter().zip(&f).map(|(x, y)| x - y).collect();
        prop_assert!(norm2(&diff) <= 1e-11 * scale.max(1.0));
    }

    #[test]
    fn levinson_agrees_with_dense(m in 2usize..150, lam in lambda_strategy(), seed in any::<u64>()) {
        let op = ToeplitzOperator::assemble(m).unwrap();
        let lam = SpectralParameter::new(lam).unwrap();
        let f = vector(m, seed);
        let sys = DiscreteSystem::new(lam, &op, &f).unwrap();
        let d = solve_dense(&sys).unwrap();
        let l = solve_levinson(&sys).unwrap();
        prop_assert!(rel_diff(&l.u, &d.u) <= 1e-8);
    }

    #[test]
    fn resolvent_ratio_never_exceeds_one(m in 1usize..80, lam in lambda_strategy(), seed in any::<u64>()) {
        let op = if m == 1 {
            ToeplitzOperator::from_parts(vec![Complex64::new(0.0, 0.0)], vec![Complex64::new(0.0, 0.0)]).unwrap()
        } else {
            ToeplitzOperator::assemble(m).unwrap()
        };
        let r = resolvent_probe(&op, &[lam], 5, seed).unwrap();
        prop_assert!(r.resolvent_samples[0].norm_ratio <= 1.0 + 1e-8);
    }

    #[test]
    fn defect_bound_on_arbitrary_meshes(a in -5.0f64..5.0, len in 0.1f64..10.0, m in 2usize..400) {
        let g = Grid::new(a, a + len, m).unwrap();
        let s = midpoint_defect(&g);
        let bound = defect_bound(&g);
        for j in 0..m {
            prop_assert!(s[j].abs() <= bound[j] + 1e-14);
            prop_assert!((s[j] + s[m - 1 - j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn error_equation_holds(case in case_strategy(), lam in lambda_strategy(), idx in 0usize..4) {
        let n = [10u64, 20, 30, 50][idx];
        let lam = SpectralParameter::new(lam).unwrap();
        let run = run_case(&case, &lam, n, SolverChoice::Auto, Interior::default()).unwrap();
        let r = &run.report;
        prop_assert_eq!(r.consistency.len(), r.m);
        prop_assert_eq!(r.discrete.len(), r.m);
        prop_assert_eq!(r.defect.len(), r.m);
        prop_assert!(r.norm_disc_l2_interior <= r.norm_disc_l2);
        prop_assert!(r.residual_identity <= 1e-10 * (1.0 + r.norm_c_l2));
    }

    #[test]
    fn exact_interpolant_has_no_discrete_error(case in case_strategy(), lam in lambda_strategy()) {
        let lam = SpectralParameter::new(lam).unwrap();
        let g = Grid::from_n(A, B, 30).unwrap();
        let u = nodal_values(&g, &case);
        prop_assume!(norm2(&u) > 0.0);
        let op = ToeplitzOperator::assemble(g.len()).unwrap();
        // right-hand side generated by the scheme itself
        let scheme_rhs = DiscreteSystem::new(lam, &op, &u).unwrap().apply(&u).unwrap();
        let sol = solve_dense(&DiscreteSystem::new(lam, &op, &scheme_rhs).unwrap()).unwrap();
        prop_assert!(rel_diff(&sol.u, &u) <= 1e-13 / lam.dist().min(1.0));
        // and it differs from the nodal f by exactly c
        let f = nodal_rhs(&g, &case, &lam);
        let c = consistency_error(&g, &case).unwrap();
        for ((l, fk), ck) in scheme_rhs.iter().zip(&f).zip(&c) {
            prop_assert!((l - fk - ck).norm() <= 1e-12 * (1.0 + fk.norm()));
        }
    }
}
