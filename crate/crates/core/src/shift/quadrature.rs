//! Floating-point cross-check of the exact semicircle inner products.
//!
//! With `t = 2 cos θ` the semicircle law becomes `(2/π) sin²θ dθ` on
//! `[0, π]`, which composite Gauss-Legendre integrates to machine precision
//! for the polynomial degrees used here.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use super::poly::{chebyshev_family, inner_nu};
use crate::report::Report;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Chebyshev-type initial guess, then Newton on P_n
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫ f dν` by composite Gauss-Legendre in the angle variable.
pub fn integrate_nu(f: impl Fn(f64) -> f64, panels: usize, order: usize) -> f64 {
    let rule = gauss_legendre(order);
    let h = PI / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for &(x, w) in &rule {
            let theta = mid + 0.5 * h * x;
            let s = theta.sin();
            total += 0.5 * h * w * f(2.0 * theta.cos()) * s * s;
        }
    }
    total * 2.0 / PI
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadratureData {
    pub max_index: usize,
    pub panels: usize,
    pub order: usize,
    pub max_abs_error: f64,
    pub worst_pair: (usize, usize),
    pub tolerance: f64,
}

/// Compare quadrature `⟨P_i, P_j⟩_ν` with the exact values for `i, j ≤ max_index`.
pub fn quadrature_crosscheck(max_index: usize, tolerance: f64) -> Report {
    let family = chebyshev_family(max_index);
    let (panels, order) = (8, 16);
    let mut worst = (0.0f64, (0, 0));
    for i in 0..=max_index {
        for j in i..=max_index {
            let exact = inner_nu(&family[i], &family[j]).to_f64().unwrap_or(f64::NAN);
            let approx = integrate_nu(|t| family[i].eval_f64(t) * family[j].eval_f64(t), panels, order);
            let err = (exact - approx).abs();
            if err > worst.0 || err.is_nan() {
                worst = (err, (i, j));
            }
        }
    }
    let data = QuadratureData { max_index, panels, order, max_abs_error: worst.0, worst_pair: worst.1, tolerance };
    let pass = worst.0 <= tolerance;
    Report::new("quadrature", json!({ "max_index": max_index, "quad_tol": tolerance }), pass, data)
}
