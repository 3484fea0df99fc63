//! Integer Laurent polynomials in `q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial `sum_k c_k q^k` with integer coefficients.
///
/// Stored densely from the lowest nonzero power. The zero polynomial has no
/// coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, power: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { low: power, coeffs: vec![c] }
    }

    /// `q^power`
    pub fn q_pow(power: i32) -> Self {
        Self::monomial(BigInt::one(), power)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    /// Build from `(power, coefficient)` terms; repeated powers are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, BigInt)>,
    {
        let terms: Vec<(i32, BigInt)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (p, c) in terms {
            coeffs[(p - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    /// Trim leading/trailing zeros.
    pub fn from_dense(mut low: i32, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            low += lead_zeros as i32;
        }
        Laurent { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest power with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest power with a nonzero coefficient.
    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Number of stored coefficient slots (span of powers).
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, power: i32) -> BigInt {
        let idx = power - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonzero `(power, coefficient)` pairs in ascending power.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn shift_in_place(&mut self, k: i32) {
        if !self.is_zero() {
            self.low += k;
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact division of every coefficient by `c`. Panics in debug builds if inexact.
    pub fn div_int(&self, c: &BigInt) -> Self {
        Laurent {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Laurent { low: self.low, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, true)
    }

    fn add_scaled(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + i];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_dense(low, coeffs)
    }

    /// In-place `self += other`.
    pub fn add_assign(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        if other.low >= self.low && other.high() <= self.high() {
            let off = (other.low - self.low) as usize;
            for (i, c) in other.coeffs.iter().enumerate() {
                self.coeffs[off + i] += c;
            }
            let coeffs = std::mem::take(&mut self.coeffs);
            *self = Self::from_dense(self.low, coeffs);
        } else {
            *self = self.add(other);
        }
    }

    /// `self += q^k · other`.
    pub fn add_shifted_assign(&mut self, other: &Self, k: i32) {
        if other.is_zero() {
            return;
        }
        let low = other.low + k;
        if !self.is_zero() && low >= self.low && other.high() + k <= self.high() {
            let off = (low - self.low) as usize;
            for (i, c) in other.coeffs.iter().enumerate() {
                self.coeffs[off + i] += c;
            }
            let coeffs = std::mem::take(&mut self.coeffs);
            *self = Self::from_dense(self.low, coeffs);
        } else {
            *self = self.add(&other.shift(k));
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_monomial() {
            let mut r = self.scale(&other.coeffs[0]);
            r.low += other.low;
            return r;
        }
        if self.is_monomial() {
            let mut r = other.scale(&self.coeffs[0]);
            r.low += self.low;
            return r;
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { low: -self.high(), coeffs }
    }

    /// gcd of the integer coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if q.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + BigRational::from_integer(c.clone());
        }
        Some(acc * pow_rational(q, self.low))
    }

    pub fn eval_f64(&self, q: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * q.powi(self.low)
    }
}

pub(crate) fn pow_rational(q: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

// ----- polynomial (nonnegative power) helpers used by the gcd -----

/// Ordinary polynomial, coefficients ascending from degree 0.
type Poly = Vec<BigInt>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_content(p: &Poly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &Poly) -> Poly {
    let c = poly_content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (deg b >= 0, b nonzero).
fn pseudo_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &lr * bc;
        }
        trim(&mut r);
        // keep coefficients small
        let c = poly_content(&r);
        if !c.is_zero() && !c.is_one() {
            for x in r.iter_mut() {
                *x /= &c;
            }
        }
    }
    r
}

/// Primitive gcd in Z[q] with positive leading coefficient.
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() {
        return normalize_sign(primitive_part(b));
    }
    if b.is_empty() {
        return normalize_sign(primitive_part(a));
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    normalize_sign(x)
}

fn normalize_sign(mut p: Poly) -> Poly {
    if p.last().is_some_and(|c| c.is_negative()) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Exact division `a / b` in Z[q]; `b` primitive and dividing `a`.
fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    if b.len() == 1 {
        return a.iter().map(|c| c / &b[0]).collect();
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        debug_assert!(rem.is_zero(), "inexact polynomial division");
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &qc * bc;
        }
        quot[shift] = qc;
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    quot
}

impl Laurent {
    fn to_poly(&self) -> Poly {
        self.coeffs.clone()
    }

    /// Greatest common divisor up to units `±q^k`, normalized as an ordinary
    /// polynomial with nonzero constant term and positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let g = poly_gcd(&self.to_poly(), &other.to_poly());
        Self::from_dense(0, g)
    }

    /// Exact division by a divisor obtained from [`Laurent::gcd`].
    pub fn div_exact(&self, divisor: &Self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let q = poly_div_exact(&self.to_poly(), &divisor.to_poly());
        Self::from_dense(self.low - divisor.low, q)
    }
}

impl PartialOrd for Laurent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order (not a numeric order); only used for deterministic sorting.
impl Ord for Laurent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, p: i32) -> fmt::Result {
    match p {
        0 => Ok(()),
        1 => write!(f, "q"),
        _ => write!(f, "q^{p}"),
    }
}

impl fmt::Display for Laurent {
    /// Descending powers, e.g. `q^2 - 1 + 2q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let terms: Vec<(i32, &BigInt)> = self.terms().collect();
        for (p, c) in terms.into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if p == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                fmt_power(f, p)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i32, i64)]) -> Laurent {
        Laurent::from_terms(terms.iter().map(|&(p, c)| (p, BigInt::from(c))))
    }

    #[test]
    fn trims_and_zero() {
        let z = lp(&[(3, 1), (3, -1)]);
        assert!(z.is_zero());
        assert_eq!(z.low(), 0);
        let p = lp(&[(-2, 0), (1, 4)]);
        assert_eq!(p.low(), 1);
        assert_eq!(p.high(), 1);
    }

    #[test]
    fn difference_of_squares() {
        let a = lp(&[(1, 1), (-1, 1)]);
        let b = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(a.mul(&b), lp(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (q - 1)(q + 2) and (q - 1)(q^2 + 1)
        let a = lp(&[(0, -2), (1, 1), (2, 1)]);
        let b = lp(&[(0, -1), (1, 1), (2, -1), (3, 1)]);
        assert_eq!(a.gcd(&b), lp(&[(0, -1), (1, 1)]));
    }

    #[test]
    fn gcd_ignores_q_power_units() {
        let a = lp(&[(-3, 1), (-2, 1)]); // q^-3 (1 + q)
        let b = lp(&[(5, 1), (6, 1)]);
        assert_eq!(a.gcd(&b), lp(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn exact_division() {
        let a = lp(&[(-1, -1), (1, 1)]); // q - q^-1 = q^-1 (q^2 - 1)
        let d = lp(&[(0, 1), (1, 1)]);
        assert_eq!(a.div_exact(&d), lp(&[(-1, -1), (0, 1)]));
    }

    #[test]
    fn display_descending() {
        assert_eq!(lp(&[(2, 1), (0, -1), (-1, 2)]).to_string(), "q^2 - 1 + 2q^-1");
        assert_eq!(lp(&[(1, -3)]).to_string(), "-3q");
    }

    #[test]
    fn eval_with_negative_powers() {
        let p = lp(&[(1, 1), (-1, 1)]);
        let v = p.eval(&BigRational::from_integer(2.into())).unwrap();
        assert_eq!(v, BigRational::new(5.into(), 2.into()));
        assert!(p.eval(&BigRational::zero()).is_none());
    }
}
