#![allow(dead_code)]

use std::f64::consts::PI;

/// Double-exponential (tanh-sinh) rule on `[lo, hi]`. The integrand gets the
/// distances `(t − lo, hi − t)` so points near either end stay resolved.
pub fn tanh_sinh<F: FnMut(f64, f64) -> f64>(lo: f64, hi: f64, mut g: F) -> f64 {
    let len = hi - lo;
    let step = 1.0 / 128.0;
    let kmax = (4.5 / step) as i64;
    let mut sum = 0.0;
    for k in -kmax..=kmax {
        let t = k as f64 * step;
        let s = 0.5 * PI * t.sinh();
        let d_lo = len / (1.0 + (-2.0 * s).exp());
        let d_hi = len / (1.0 + (2.0 * s).exp());
        if d_lo <= 0.0 || d_hi <= 0.0 {
            continue;
        }
        let cosh_s = s.cosh();
        let w = 0.5 * len * 0.5 * PI * t.cosh() / (cosh_s * cosh_s);
        sum += w * g(d_lo, d_hi);
    }
    sum * step
}

pub fn norm2(v: &[ddhilbert::Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn rel_diff(x: &[ddhilbert::Complex64], y: &[ddhilbert::Complex64]) -> f64 {
    let d: Vec<_> = x.iter().zip(y).map(|(p, q)| p - q).collect();
    norm2(&d) / norm2(y)
}

/// OLS slope of `log y` against `log x`, written out independently of the
/// library fit.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const S1_LIMIT: f64 = 0.115931515658412;
