//! Dense matrices over an ordered field (exact rationals or `f64`) and the
//! truncated unilateral shift.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};
use serde::Serialize;

use super::poly::IntPoly;

/// The scalar fields the shift model and the certificate run over.
pub trait Field: Clone + Num + Signed + PartialOrd + Debug + Send + Sync + 'static {
    fn from_bigint(c: &BigInt) -> Self;
    fn from_i64(c: i64) -> Self {
        Self::from_bigint(&BigInt::from(c))
    }
    fn to_f64(&self) -> f64;
}

impl Field for BigRational {
    fn from_bigint(c: &BigInt) -> Self {
        BigRational::from_integer(c.clone())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    fn from_bigint(c: &BigInt) -> Self {
        ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &T) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`, row index `(i, k) -> i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a.clone() * b.clone());
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// `p(self)` by Horner's rule.
    pub fn poly(&self, p: &IntPoly) -> Self {
        let n = self.rows;
        p.coeffs().iter().rev().fold(Self::zeros(n, n), |acc, c| {
            acc.mul(self).add(&Self::identity(n).scale(&T::from_bigint(c)))
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a.clone() - b.clone()).abs().to_f64()).fold(0.0, f64::max)
    }
}

/// The unilateral shift on `ℓ²(ℕ)` truncated to `span{e_0, …, e_{N-1}}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftTruncation {
    pub n: usize,
}

impl ShiftTruncation {
    pub fn new(n: usize) -> Self {
        ShiftTruncation { n }
    }

    /// `S e_i = e_{i+1}`; `e_{N-1}` is sent to 0.
    pub fn s<T: Field>(&self) -> Mat<T> {
        let mut m = Mat::zeros(self.n, self.n);
        for i in 0..self.n.saturating_sub(1) {
            m.set(i + 1, i, T::one());
        }
        m
    }

    /// `T = S + S*`.
    pub fn t<T: Field>(&self) -> Mat<T> {
        let s = self.s::<T>();
        s.add(&s.transpose())
    }

    /// The rank-one projection onto `e_j`.
    pub fn qe<T: Field>(&self, j: usize) -> Mat<T> {
        let mut m = Mat::zeros(self.n, self.n);
        m.set(j, j, T::one());
        m
    }

    /// The partial isometry `v_i = |e_0⟩⟨e_i|`.
    pub fn v<T: Field>(&self, i: usize) -> Mat<T> {
        let mut m = Mat::zeros(self.n, self.n);
        m.set(0, i, T::one());
        m
    }

    pub fn basis_vector<T: Field>(&self, i: usize) -> Vec<T> {
        (0..self.n).map(|k| if k == i { T::one() } else { T::zero() }).collect()
    }
}
