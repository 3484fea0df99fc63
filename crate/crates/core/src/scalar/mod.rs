//! Exact scalars: rational functions in `q` with integer coefficients.
//!
//! The loop modulus is `delta = q^2`, so half-integer powers of `delta`
//! (the `delta^{-k/2}` normalizations) stay inside the ring as `q^{-k}`.

mod laurent;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use laurent::Laurent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(BigRational),
    #[error("malformed scalar: {0}")]
    Malformed(String),
}

/// A reduced fraction `num / den` of Laurent polynomials.
///
/// Canonical form: `gcd(num, den) = 1` (including integer content), `den` is
/// an ordinary polynomial with nonzero constant term, and that constant term
/// is positive. Equal values have identical representations, so derived
/// `Eq`/`Hash` are value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Laurent::zero(), den: Laurent::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Laurent::one(), den: Laurent::one() }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Scalar { num: Laurent::from_int(c), den: Laurent::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(Laurent::from_int(r.numer().clone()), Laurent::from_int(r.denom().clone()))
            .expect("rational has nonzero denominator")
    }

    /// `q^k`
    pub fn q_pow(k: i32) -> Self {
        Scalar { num: Laurent::q_pow(k), den: Laurent::one() }
    }

    /// The loop modulus `delta = q^2`.
    pub fn delta() -> Self {
        Self::q_pow(2)
    }

    /// `delta^k = q^{2k}`
    pub fn delta_pow(k: i32) -> Self {
        Self::q_pow(2 * k)
    }

    pub fn from_laurent(p: Laurent) -> Self {
        Scalar { num: p, den: Laurent::one() }
    }

    pub fn from_parts(num: Laurent, den: Laurent) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1 (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn reduce(mut num: Laurent, mut den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // move the q-power of the denominator into the numerator
        let shift = den.low();
        if shift != 0 {
            den.shift_in_place(-shift);
            num.shift_in_place(-shift);
        }
        if !den.is_monomial() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_int(&c);
            den = den.div_int(&c);
        }
        if den.lowest_coeff().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.add(&other.num), den: Laurent::one() };
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::reduce(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar { num: self.num.mul(&other.num), den: Laurent::one() };
        }
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::reduce(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    /// Multiply by `q^k` without any gcd work.
    pub fn shift(&self, k: i32) -> Self {
        Scalar { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if self.den.is_one() {
            Scalar { num: self.num.scale(c), den: Laurent::one() }
        } else {
            Self::reduce(self.num.scale(c), self.den.clone())
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        Ok(Scalar { num: base.num.pow(e.unsigned_abs()), den: base.den.pow(e.unsigned_abs()) })
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, ScalarError> {
        Ok(match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other)?,
        })
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0).ok_or_else(|| ScalarError::Pole(q0.clone()))?;
        if d.is_zero() {
            return Err(ScalarError::Pole(q0.clone()));
        }
        let n = self.num.eval(q0).ok_or_else(|| ScalarError::Pole(q0.clone()))?;
        Ok(n / d)
    }

    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.num.eval_f64(q0) / self.den.eval_f64(q0)
    }

    /// If this scalar is a rational constant, return it.
    pub fn as_rational(&self) -> Option<BigRational> {
        let const_part = |p: &Laurent| (p.low() == 0 && p.is_monomial()).then(|| p.coeff(0));
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        Some(BigRational::new(const_part(&self.num)?, const_part(&self.den)?))
    }

    /// True when only even powers of `q` occur, i.e. a function of `delta` alone.
    pub fn is_even_in_q(&self) -> bool {
        self.num.terms().all(|(p, _)| p % 2 == 0) && self.den.terms().all(|(p, _)| p % 2 == 0)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<Laurent> for Scalar {
    fn from(p: Laurent) -> Self {
        Scalar::from_laurent(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let multi = |p: &Laurent| p.terms().count() > 1;
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if multi(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if multi(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

// ----- JSON: {"num": [[deg, "coeff"], ...], "den": [...]} -----

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    num: Vec<(i32, String)>,
    den: Vec<(i32, String)>,
}

fn laurent_to_repr(p: &Laurent) -> Vec<(i32, String)> {
    p.terms().map(|(d, c)| (d, c.to_string())).collect()
}

fn repr_to_laurent(terms: &[(i32, String)]) -> Result<Laurent, ScalarError> {
    let parsed: Result<Vec<(i32, BigInt)>, ScalarError> = terms
        .iter()
        .map(|(d, c)| {
            c.parse::<BigInt>()
                .map(|c| (*d, c))
                .map_err(|_| ScalarError::Malformed(format!("bad coefficient {c:?}")))
        })
        .collect();
    Ok(Laurent::from_terms(parsed?))
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr { num: laurent_to_repr(&self.num), den: laurent_to_repr(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(d)?;
        let num = repr_to_laurent(&repr.num).map_err(serde::de::Error::custom)?;
        let den = repr_to_laurent(&repr.den).map_err(serde::de::Error::custom)?;
        Scalar::from_parts(num, den).map_err(serde::de::Error::custom)
    }
}

/// The quantum integer `[k]` at loop value `delta`: `[0] = 0`, `[1] = 1`,
/// `[k+1] = delta [k] - [k-1]`.
pub fn quantum_integer(k: u32) -> Scalar {
    let delta = Laurent::q_pow(2);
    let (mut prev, mut cur) = (Laurent::zero(), Laurent::one());
    if k == 0 {
        return Scalar::zero();
    }
    for _ in 1..k {
        let next = delta.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    Scalar::from_laurent(cur)
}
