//! Exact identities for the truncated shift: the polynomial form of the
//! Ψ intertwining, `P_i(T) e_0 = e_i`, and the telescoping factorization.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use super::matrix::{Field, Mat, ShiftTruncation};
use super::poly::{chebyshev_family, IntPoly};
use crate::report::Report;

type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error("index {i} outside the exact range for dimension {n} (need 2i <= N - 1)")]
    BoundaryViolated { i: usize, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn rat_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `X·P_i = P_{i+1} + P_{i-1}` for `i ≤ N - 2`: multiplication by `t` in the
/// orthonormal basis `{P_i}` is the truncated `S + S*`.
pub fn check_psi_intertwining(n: usize) -> Result<Report, ShiftError> {
    if n < 2 {
        return Err(ShiftError::InvalidArgument(format!("N = {n}, need N >= 2")));
    }
    let p = chebyshev_family(n);
    let mut failures = Vec::new();
    // column i of the multiplication-by-X matrix in the P basis
    let mut mult = Mat::<Q>::zeros(n, n);
    for i in 0..=n - 2 {
        let lhs = p[i].shift_up();
        let rhs = if i == 0 { p[1].clone() } else { p[i + 1].add(&p[i - 1]) };
        if lhs != rhs {
            failures.push(i);
        }
        mult.set(i + 1, i, Q::from_i64(1));
        if i >= 1 {
            mult.set(i - 1, i, Q::from_i64(1));
        }
    }
    let t = ShiftTruncation::new(n).t::<Q>();
    let columns_match = (0..=n - 2).all(|i| mult.column(i) == t.column(i));
    let pass = failures.is_empty() && columns_match;
    let data = json!({
        "checked_indices": n - 1,
        "failures": failures,
        "matches_truncated_shift": columns_match,
        "interior_bound": n - 2,
    });
    Ok(Report::new("psi-intertwining", json!({ "n": n }), pass, data))
}

#[derive(Debug, Clone, Serialize)]
pub struct ViData {
    /// Row 0 of `P_i(T_N)` on the interior columns.
    pub lhs: Vec<String>,
    /// Row 0 of `v_i` on the same columns.
    pub rhs: Vec<String>,
    /// `P_i(T_N) e_0` in full.
    pub column_lhs: Vec<String>,
    pub column_matches: bool,
    /// Columns `l` with `l + i < N` are compared.
    pub interior_bound: usize,
    pub partial_isometry: bool,
}

/// `q_{e_0} P_i(T) = v_i` and `P_i(T) e_0 = e_i` on interior indices.
pub fn vi_identity_check(i: usize, n: usize) -> Result<Report, ShiftError> {
    if 2 * i + 1 > n {
        return Err(ShiftError::BoundaryViolated { i, n });
    }
    let sh = ShiftTruncation::new(n);
    let p = chebyshev_family(i).pop().expect("family");
    let a = sh.t::<Q>().poly(&p);
    let cols: Vec<usize> = (0..n).filter(|&l| l + i < n).collect();
    let row0: Vec<Q> = cols.iter().map(|&l| a.get(0, l).clone()).collect();
    let v = sh.v::<Q>(i);
    let target: Vec<Q> = cols.iter().map(|&l| v.get(0, l).clone()).collect();
    let col0 = a.column(0);
    let column_matches = col0 == sh.basis_vector::<Q>(i);
    let partial_isometry = v.transpose().mul(&v) == sh.qe(i) && v.mul(&v.transpose()) == sh.qe(0);
    let pass = row0 == target && column_matches && partial_isometry;
    let data = ViData {
        lhs: rat_strings(&row0),
        rhs: rat_strings(&target),
        column_lhs: rat_strings(&col0),
        column_matches,
        interior_bound: n - i - 1,
        partial_isometry,
    };
    Ok(Report::new("vi-identity", json!({ "i": i, "n": n }), pass, data))
}

#[derive(Debug, Clone, Serialize)]
pub struct TelescopingData {
    /// Nonzero interior entries `(row, col, value)` of `T^k⊗1 - 1⊗T^k`.
    pub lhs: Vec<(usize, usize, String)>,
    /// The same entries of `(T⊗1 - 1⊗T) Σ_j T^j⊗T^{k-1-j}`.
    pub rhs: Vec<(usize, usize, String)>,
    /// Tensor indices `(a, b)` with `a, b < interior_bound` are compared.
    pub interior_bound: usize,
    pub full_matrices_equal: bool,
}

/// `T^k⊗1 - 1⊗T^k = (T⊗1 - 1⊗T)(Σ_{j<k} T^j⊗T^{k-1-j})` on the interior block.
pub fn telescoping_check(k: usize, n: usize) -> Result<Report, ShiftError> {
    if k < 1 {
        return Err(ShiftError::InvalidArgument(format!("k = {k}, need k >= 1")));
    }
    if n <= k {
        return Err(ShiftError::InvalidArgument(format!("N = {n} leaves no interior for k = {k}")));
    }
    let t = ShiftTruncation::new(n).t::<Q>();
    let id = Mat::<Q>::identity(n);
    let lhs = t.pow(k).kron(&id).sub(&id.kron(&t.pow(k)));
    let diff = t.kron(&id).sub(&id.kron(&t));
    let mut sum = Mat::<Q>::zeros(n * n, n * n);
    for j in 0..k {
        sum = sum.add(&t.pow(j).kron(&t.pow(k - 1 - j)));
    }
    let rhs = diff.mul(&sum);
    let bound = n - k;
    let interior: Vec<usize> = (0..n * n).filter(|&x| x / n < bound && x % n < bound).collect();
    let pick = |m: &Mat<Q>| -> Vec<(usize, usize, String)> {
        let mut out = Vec::new();
        for &r in &interior {
            for &c in &interior {
                let x = m.get(r, c);
                if !x.is_zero() {
                    out.push((r, c, x.to_string()));
                }
            }
        }
        out
    };
    let (l, r) = (pick(&lhs), pick(&rhs));
    let pass = l == r;
    let data = TelescopingData { lhs: l, rhs: r, interior_bound: bound, full_matrices_equal: lhs == rhs };
    Ok(Report::new("telescoping", json!({ "k": k, "n": n }), pass, data))
}

/// `P_i(T_N)` for callers outside this module.
pub fn chebyshev_of_shift<T: Field>(i: usize, n: usize) -> Mat<T> {
    let p: IntPoly = chebyshev_family(i).pop().expect("family");
    ShiftTruncation::new(n).t::<T>().poly(&p)
}
