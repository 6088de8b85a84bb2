//! Gauss–Legendre rules.

// f64 math on targets without std
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

/// Nodes and weights on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule from Newton iteration on `P_n`; panics if `n == 0`.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            // Tricomi initial guess, descending roots
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        nodes.reverse();
        weights.reverse();
        Self { nodes, weights }
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

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_lo^hi g(t) dt`; `g` never sees the endpoints.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut g: F) -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * g(mid + half * t))
            .sum::<f64>()
    }
}

// (P_n(x), P_n'(x)) by the three-term recurrence
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_point_rule() {
        let g = GaussLegendre::new(8);
        assert_eq!(g.len(), 8);
        assert!((g.weights().iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // largest node of the 8-point rule
        assert!((g.nodes()[7] - 0.9602898564975363).abs() < 1e-15);
        assert!((g.weights()[7] - 0.1012285362903763).abs() < 1e-15);
        for w in g.nodes().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn exact_for_polynomials() {
        let g = GaussLegendre::new(8);
        for deg in 0..16 {
            let exact = (2.0f64.powi(deg + 1) - 0.0) / (deg + 1) as f64;
            let got = g.integrate(0.0, 2.0, |t| t.powi(deg));
            assert!((got - exact).abs() < 1e-12 * exact, "deg {deg}");
        }
    }

    #[test]
    fn single_node() {
        let g = GaussLegendre::new(1);
        assert_eq!(g.nodes(), &[0.0]);
        assert_eq!(g.weights(), &[2.0]);
    }
}
