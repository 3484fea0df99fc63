//! Dense exact linear algebra over `Scalar` and over `BigRational`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::scalar::{Scalar, ScalarError};

/// A dense row-major matrix of scalars.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<Scalar>>) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
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
                        let s = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        ScalarMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        ScalarMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        ScalarMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn eval(&self, q0: &BigRational) -> Result<Vec<Vec<BigRational>>, ScalarError> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.eval(q0)).collect()).collect()
    }

    /// Reduced row echelon form by fraction-field elimination; returns the
    /// pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip().expect("nonzero pivot");
            for j in c..self.cols {
                let x = self.get(r, j).mul(&inv);
                self.set(r, j, x);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let x = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// A basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of a rational matrix.
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let x = &a[r][j] * &f;
                a[i][j] -= x;
            }
        }
        r += 1;
    }
    r
}

/// The pivots `d_i` of `A = L D L^T` for a symmetric rational matrix, or
/// `None` if a zero pivot appears (no LDL without pivoting).
pub fn ldl_pivots(a: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = a[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        if dj.is_zero() {
            return None;
        }
        for i in j + 1..n {
            let mut s = a[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        l[j][j] = BigRational::one();
        d[j] = dj;
    }
    Some(d)
}

/// True when every LDL pivot exists and is strictly positive.
pub fn is_positive_definite(a: &[Vec<BigRational>]) -> bool {
    ldl_pivots(a).is_some_and(|d| d.iter().all(Signed::is_positive))
}

/// Exact Gram-Schmidt without normalization: returns `u_k = v_k - Σ_{i<k}
/// <v_k, u_i>/<u_i, u_i> u_i`, skipping vectors that become zero.
pub fn gram_schmidt<V: Clone>(
    vectors: &[V],
    inner: impl Fn(&V, &V) -> Scalar,
    axpy: impl Fn(&V, &Scalar, &V) -> V,
    is_zero: impl Fn(&V) -> bool,
) -> Vec<V> {
    let mut out: Vec<(V, Scalar)> = Vec::new();
    for v in vectors {
        let mut u = v.clone();
        for (w, nw) in &out {
            let c = inner(v, w).div(nw).expect("nonzero norm").neg();
            if !c.is_zero() {
                u = axpy(&u, &c, w);
            }
        }
        if !is_zero(&u) {
            let n = inner(&u, &u);
            out.push((u, n));
        }
    }
    out.into_iter().map(|(u, _)| u).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ldl_of_small_matrices() {
        let a = vec![vec![r(4, 1), r(2, 1)], vec![r(2, 1), r(3, 1)]];
        assert_eq!(ldl_pivots(&a), Some(vec![r(4, 1), r(2, 1)]));
        assert!(is_positive_definite(&a));
        let b = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(1, 1)]];
        assert!(!is_positive_definite(&b));
    }

    #[test]
    fn kernel_and_rank() {
        let q = Scalar::q_pow(1);
        let mut m = ScalarMatrix::zeros(1, 2);
        m.set(0, 0, q.clone());
        m.set(0, 1, Scalar::one());
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].mul(&q).add(&k[0][1]), Scalar::zero());
        assert_eq!(m.rank(), 1);
        assert_eq!(rational_rank(&[vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]]), 1);
    }
}
