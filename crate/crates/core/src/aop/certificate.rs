//! The norm inequality chain on `ℓ²(N) ⊗ ℓ²(N)` that bounds `‖(q_{e_0}⊗1)ξ‖`
//! for a unit vector `ξ` whose defects `‖(q_{e_0}⊗P_i(T) - v_i⊗1)ξ‖` are small.
//!
//! Every line is evaluated on squared norms, so the chain is exact over the
//! rationals. With `m = min R_I` on a grid and defects at most `eps`:
//!
//! ```text
//! (a) 1 ≥ Σ_{i≤I} ‖(q_{e_i}⊗1)ξ‖²
//! (b) ‖(q_{e_i}⊗1)ξ‖² = ‖(v_i⊗1)ξ‖²
//! (c) Σ ‖(v_i⊗1)ξ‖² ≥ Σ ‖(q_{e_0}⊗P_i(T))ξ‖² - (I+1)(eps² + 2 eps)
//! (d) Σ ‖(q_{e_0}⊗P_i(T))ξ‖² ≥ m ‖(q_{e_0}⊗1)ξ‖²
//! (e) ‖(q_{e_0}⊗1)ξ‖² ≤ β = (1 + (I+1)(eps² + 2 eps)) / m
//! ```

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::AopError;
use crate::report::Report;
use crate::shift::checks::chebyshev_of_shift;
use crate::shift::{Field, Mat, ShiftTruncation};

/// The operators of the chain for `i ≤ I` on the `N × N` double space.
pub struct CertificateOps<T> {
    pub n: usize,
    pub big_i: usize,
    /// `q_{e_0} ⊗ P_i(T)`
    pub a: Vec<Mat<T>>,
    /// `v_i ⊗ 1`
    pub b: Vec<Mat<T>>,
    /// `q_{e_i} ⊗ 1`
    pub c: Vec<Mat<T>>,
    /// `a[i] - b[i]`
    pub defect: Vec<Mat<T>>,
}

impl<T: Field> CertificateOps<T> {
    pub fn new(n: usize, big_i: usize) -> Result<Self, AopError> {
        if big_i >= n {
            return Err(AopError::InvalidArgument(format!("I = {big_i} needs N > I, got N = {n}")));
        }
        let sh = ShiftTruncation::new(n);
        let id = Mat::<T>::identity(n);
        let q0 = sh.qe::<T>(0);
        let a: Vec<Mat<T>> = (0..=big_i).map(|i| q0.kron(&chebyshev_of_shift::<T>(i, n))).collect();
        let b: Vec<Mat<T>> = (0..=big_i).map(|i| sh.v::<T>(i).kron(&id)).collect();
        let c = (0..=big_i).map(|i| sh.qe::<T>(i).kron(&id)).collect();
        let defect = a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect();
        Ok(CertificateOps { n, big_i, a, b, c, defect })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Line {
    pub name: String,
    pub relation: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub lhs_approx: f64,
    pub rhs_approx: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateData {
    pub n: usize,
    pub big_i: usize,
    pub eps: String,
    pub grid_min: String,
    pub norm_squared: String,
    pub defects: Vec<f64>,
    pub lines: Vec<Line>,
    pub q0_norm_squared: String,
    pub beta: String,
    /// `β < 1`: the chain forces `‖(q_{e_0}⊗1)ξ‖ < 1`.
    pub conclusive: bool,
    /// `√β`, the bound on `‖(q_{e_0}⊗1)ξ‖`.
    pub bound: f64,
    /// `2 / m`, the ε for which `m > 2/ε` is just met.
    pub epsilon_from_grid: f64,
    /// Whether `Σ ‖(q_{e_0}⊗P_i(T))ξ‖² - (I+1)(eps² + 2 eps) ≥ (I+1)(m ‖(q_{e_0}⊗1)ξ‖ - 1)`
    /// also happens to hold; informational only.
    pub unsquared_final_line: bool,
    pub pass: bool,
}

impl CertificateData {
    pub fn to_report(&self, params: serde_json::Value) -> Report {
        Report::new("certificate", params, self.pass, self)
    }
}

fn norm_sq<T: Field>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
}

fn line<T: Field + Display>(name: String, relation: &'static str, lhs: &T, rhs: &T, tol: &T) -> Line {
    let holds = match relation {
        ">=" => lhs.clone() + tol.clone() >= *rhs,
        "<=" => lhs.clone() <= rhs.clone() + tol.clone(),
        _ => (lhs.clone() - rhs.clone()).abs() <= *tol,
    };
    Line { name, relation, lhs: lhs.to_string(), rhs: rhs.to_string(), lhs_approx: lhs.to_f64(), rhs_approx: rhs.to_f64(), holds }
}

/// Evaluate the chain for `ξ` (index `a·N + b` for `e_a ⊗ e_b`), defect bound
/// `eps` and grid minimum `m` of `R_I`. Comparisons allow slack `tol`
/// (zero in exact mode).
pub fn pythagoras_certificate<T: Field + Display>(
    ops: &CertificateOps<T>,
    xi: &[T],
    eps: &T,
    m: &T,
    tol: &T,
) -> Result<CertificateData, AopError> {
    let n = ops.n;
    if xi.len() != n * n {
        return Err(AopError::InvalidArgument(format!("vector has length {}, need {}", xi.len(), n * n)));
    }
    let one = T::one();
    let norm = norm_sq(xi);
    if (norm.clone() - one.clone()).abs() > *tol {
        return Err(AopError::InvalidArgument(format!("‖ξ‖² = {norm}, need 1")));
    }
    let quarter = one.clone() / T::from_i64(4);
    if *eps > quarter || *eps < T::zero() {
        return Err(AopError::Defect(format!("eps = {eps} must lie in [0, 1/4]")));
    }
    let terms = ops.big_i + 1;
    let a_sq: Vec<T> = ops.a.iter().map(|op| norm_sq(&op.mul_vec(xi))).collect();
    let b_sq: Vec<T> = ops.b.iter().map(|op| norm_sq(&op.mul_vec(xi))).collect();
    let c_sq: Vec<T> = ops.c.iter().map(|op| norm_sq(&op.mul_vec(xi))).collect();
    let mut defects = Vec::with_capacity(terms);
    for i in 0..terms {
        let d = ops.defect[i].mul_vec(xi);
        let d_sq = norm_sq(&d);
        if d_sq > eps.clone() * eps.clone() + tol.clone() {
            return Err(AopError::Defect(format!("defect {i} has squared norm {d_sq} > eps² = {}", eps.clone() * eps.clone())));
        }
        defects.push(d_sq.to_f64().sqrt());
    }

    let sum = |v: &[T]| v.iter().fold(T::zero(), |acc, x| acc + x.clone());
    let slack = T::from_i64(terms as i64) * (eps.clone() * eps.clone() + T::from_i64(2) * eps.clone());
    let x_sq = c_sq[0].clone();
    let mut lines = vec![line("a".into(), ">=", &one, &sum(&c_sq), tol)];
    for i in 0..terms {
        lines.push(line(format!("b[{i}]"), "==", &c_sq[i], &b_sq[i], tol));
    }
    lines.push(line("c".into(), ">=", &sum(&b_sq), &(sum(&a_sq) - slack.clone()), tol));
    lines.push(line("d".into(), ">=", &sum(&a_sq), &(m.clone() * x_sq.clone()), tol));
    let beta = (one.clone() + slack.clone()) / m.clone();
    lines.push(line("e".into(), "<=", &x_sq, &beta, tol));

    let unsquared_final_line = {
        let x = x_sq.to_f64().sqrt();
        (sum(&a_sq) - slack).to_f64() >= terms as f64 * (m.to_f64() * x - 1.0)
    };
    let pass = lines.iter().all(|l| l.holds);
    Ok(CertificateData {
        n,
        big_i: ops.big_i,
        eps: eps.to_string(),
        grid_min: m.to_string(),
        norm_squared: norm.to_string(),
        defects,
        lines,
        q0_norm_squared: x_sq.to_string(),
        conclusive: beta < one,
        bound: beta.to_f64().sqrt(),
        beta: beta.to_string(),
        epsilon_from_grid: 2.0 / m.to_f64(),
        unsquared_final_line,
        pass,
    })
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A rational unit vector on the `N × N` double space whose rows `1..=I` are
/// `P_i(T)` applied to a small row 0, up to noise of size `noise`, with the
/// remaining rows random. The design vector is mapped to the unit sphere by
/// inverse stereographic projection through `e_{N-1}⊗e_{N-1}`, which rescales
/// every other coordinate by the same factor.
pub fn near_commuting_vector(n: usize, big_i: usize, seed: u64, noise: &BigRational) -> Vec<BigRational> {
    assert!(big_i + 1 < n, "need rows above I");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut y = vec![rat(0, 1); n * n];
    let u: Vec<BigRational> = (0..n).map(|_| rat(rng.gen_range(-100..=100), 1000)).collect();
    y[..n].clone_from_slice(&u);
    for i in 1..=big_i {
        let row = chebyshev_of_shift::<BigRational>(i, n).mul_vec(&u);
        for (b, x) in row.into_iter().enumerate() {
            y[i * n + b] = x + noise * rat(rng.gen_range(-1000..=1000), 1000);
        }
    }
    for a in big_i + 1..n {
        for b in 0..n {
            y[a * n + b] = rat(rng.gen_range(-1000..=1000), 1000);
        }
    }
    let pole = n * n - 1;
    y[pole] = rat(0, 1);
    let s = norm_sq(&y);
    let denom = &s + rat(1, 1);
    let mut xi: Vec<BigRational> = y.iter().map(|x| rat(2, 1) * x / &denom).collect();
    xi[pole] = (&s - rat(1, 1)) / &denom;
    xi
}

/// Run the chain on `count` seeded vectors in both exact and `f64` arithmetic.
pub fn random_certificates(n: usize, big_i: usize, grid_size: usize, seed: u64, count: usize) -> Result<Report, AopError> {
    let m = crate::shift::r_function_min(big_i, grid_size).0;
    let eps = rat(1, 100);
    let noise = rat(1, 10_000);
    let exact_ops = CertificateOps::<BigRational>::new(n, big_i)?;
    let float_ops = CertificateOps::<f64>::new(n, big_i)?;
    let mut results = Vec::new();
    let mut pass = true;
    for c in 0..count {
        let xi = near_commuting_vector(n, big_i, seed.wrapping_add(c as u64), &noise);
        let exact = pythagoras_certificate(&exact_ops, &xi, &eps, &m, &rat(0, 1))?;
        let xf: Vec<f64> = xi.iter().map(Field::to_f64).collect();
        let float = pythagoras_certificate(&float_ops, &xf, &Field::to_f64(&eps), &Field::to_f64(&m), &1e-12)?;
        pass &= exact.pass && float.pass && exact.conclusive;
        results.push(json!({
            "seed": seed.wrapping_add(c as u64),
            "exact_pass": exact.pass,
            "float_pass": float.pass,
            "conclusive": exact.conclusive,
            "bound": exact.bound,
            "q0_norm": Field::to_f64(&xi[..n].iter().fold(rat(0, 1), |a, x| a + x * x)).sqrt(),
            "max_defect": exact.defects.iter().cloned().fold(0.0, f64::max),
            "lines": exact.lines.iter().map(|l| json!({ "name": l.name, "holds": l.holds, "float_holds": float.lines.iter().find(|f| f.name == l.name).map(|f| f.holds) })).collect::<Vec<_>>(),
        }));
    }
    let params = json!({ "n": n, "I": big_i, "grid_size": grid_size, "seed": seed, "count": count, "eps": "1/100" });
    let data = json!({ "grid_min": m.to_string(), "vectors": results });
    Ok(Report::new("certificate", params, pass, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis_vector(n: usize, a: usize, b: usize) -> Vec<BigRational> {
        (0..n * n).map(|k| if k == a * n + b { rat(1, 1) } else { rat(0, 1) }).collect()
    }

    #[test]
    fn commuting_symmetric_vector() {
        let ops = CertificateOps::<BigRational>::new(8, 3).unwrap();
        let m = crate::shift::r_function_min(3, 1001).0;
        let d = pythagoras_certificate(&ops, &basis_vector(8, 5, 5), &rat(1, 4), &m, &rat(0, 1)).unwrap();
        assert!(d.pass);
        assert!(d.defects.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn vacuous_at_level_zero() {
        let ops = CertificateOps::<BigRational>::new(4, 0).unwrap();
        let d = pythagoras_certificate(&ops, &basis_vector(4, 0, 0), &rat(0, 1), &rat(1, 1), &rat(0, 1)).unwrap();
        assert!(d.pass);
        assert!(!d.conclusive);
        assert_eq!(d.q0_norm_squared, "1");
    }

    #[test]
    fn defect_precondition() {
        let ops = CertificateOps::<BigRational>::new(4, 1).unwrap();
        // row 1 is not P_1(T) applied to row 0
        let xi = basis_vector(4, 1, 0);
        let r = pythagoras_certificate(&ops, &xi, &rat(1, 4), &rat(1, 1), &rat(0, 1));
        assert!(matches!(r, Err(AopError::Defect(_))));
        assert!(pythagoras_certificate(&ops, &xi, &rat(1, 2), &rat(1, 1), &rat(0, 1)).is_err());
    }

    #[test]
    fn random_vectors_are_unit_and_conclusive() {
        let xi = near_commuting_vector(8, 3, 7, &rat(1, 10_000));
        assert_eq!(norm_sq(&xi), rat(1, 1));
        let r = random_certificates(8, 3, 1001, 11, 2).unwrap();
        assert!(r.pass, "{}", r.data);
    }
}
