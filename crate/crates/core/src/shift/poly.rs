//! Integer polynomials in one variable `X`, the orthogonal family `P_i` of
//! the semicircle law, and exact moments.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Dense ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `X`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Multiply by `X`.
    pub fn shift_up(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        v.serialize(s)
    }
}

/// `P_0 = 1`, `P_1 = X`, `P_i = X P_{i-1} - P_{i-2}`.
pub fn chebyshev(i: usize) -> IntPoly {
    chebyshev_family(i).pop().expect("nonempty family")
}

/// `[P_0, …, P_i]`.
pub fn chebyshev_family(i: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::one()];
    if i >= 1 {
        out.push(IntPoly::x());
    }
    for k in 2..=i {
        let next = out[k - 1].shift_up().sub(&out[k - 2]);
        out.push(next);
    }
    out
}

pub fn catalan_big(n: usize) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    c
}

/// `∫ t^k dν`: `C_{k/2}` for even `k`, `0` for odd `k`.
pub fn semicircle_moment(k: usize) -> BigRational {
    if k % 2 == 1 {
        BigRational::zero()
    } else {
        BigRational::from_integer(catalan_big(k / 2))
    }
}

/// `∫ P Q dν` by expanding in moments.
pub fn inner_nu(p: &IntPoly, q: &IntPoly) -> BigRational {
    let prod = p.mul(q);
    prod.coeffs()
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (k, c)| acc + semicircle_moment(k) * BigRational::from_integer(c.clone()))
}

/// `⟨P_i, P_j⟩_ν = [i = j]` for `i, j ≤ max_index`, exactly.
pub fn orthonormality_check(max_index: usize) -> crate::report::Report {
    let family = chebyshev_family(max_index);
    let mut failures = Vec::new();
    for i in 0..=max_index {
        for j in i..=max_index {
            let value = inner_nu(&family[i], &family[j]);
            let want = if i == j { BigRational::one() } else { BigRational::zero() };
            if value != want {
                failures.push((i, j, value.to_string()));
            }
        }
    }
    let data = serde_json::json!({
        "pairs": (max_index + 1) * (max_index + 2) / 2,
        "failures": failures,
        "polynomials": family.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    crate::report::Report::new("chebyshev-orthonormality", serde_json::json!({ "max_index": max_index }), failures.is_empty(), data)
}
