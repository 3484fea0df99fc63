//! The graded algebra `Gr(P) = ⊕ P_n`: finite linear combinations of basis
//! diagrams with the stitch-sum product, the bullet (side-by-side) product,
//! the loop-counting inner product, trace and adjoint.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::ScalarMatrix;
use crate::scalar::{Laurent, Scalar, ScalarError};
use crate::tl::{Diagram, PlanarBasis, Side};

/// A finite linear combination of basis diagrams; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedElement<B: PlanarBasis = Diagram> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: PlanarBasis> GradedElement<B> {
    pub fn zero() -> Self {
        GradedElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::basis(B::unit())
    }

    pub fn basis(d: B) -> Self {
        GradedElement { terms: BTreeMap::from([(d, Scalar::one())]) }
    }

    pub fn monomial(d: B, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(d, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (d, c) in terms {
            e.add_term(d, c);
        }
        e
    }

    /// Add `c·d` in place.
    pub fn add_term(&mut self, d: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &B) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn max_grade(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.grade()).max()
    }

    pub fn min_grade(&self) -> Option<usize> {
        self.terms.keys().map(|d| d.grade()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.max_grade() == self.min_grade()
    }

    /// The component in `P_n`.
    pub fn part(&self, n: usize) -> Self {
        let terms = self.terms.iter().filter(|(d, _)| d.grade() == n).map(|(d, c)| (d.clone(), c.clone())).collect();
        GradedElement { terms }
    }

    /// Drop every component of grade above `n`.
    pub fn truncate(&self, n: usize) -> Self {
        let terms = self.terms.iter().filter(|(d, _)| d.grade() <= n).map(|(d, c)| (d.clone(), c.clone())).collect();
        GradedElement { terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(d, x)| (d.clone(), x.mul(c))).collect();
        GradedElement { terms }
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(d, x)| (d.clone(), x.neg())).collect();
        GradedElement { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (d, c) in &other.terms {
            self.add_term(d.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `c1·a + c2·b`.
    pub fn combine(a: &Self, b: &Self, c1: &Scalar, c2: &Scalar) -> Self {
        let mut out = a.scale(c1);
        out.add_assign(&b.scale(c2));
        out
    }

    /// The stitch-sum product `Σ_j δ^loops · stitch(x, y, j)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let pairs: Vec<(&B, &Scalar)> = self.terms.iter().collect();
        let partials: Vec<Self> = pairs
            .par_iter()
            .map(|(x, cx)| {
                let mut acc = Self::zero();
                for (y, cy) in &other.terms {
                    let c = cx.mul(cy);
                    for j in 0..=2 * x.grade().min(y.grade()) {
                        let (loops, d) = x.stitch(y, j).expect("depth within range");
                        acc.add_term(d, c.mul(&Scalar::delta_pow(loops as i32)));
                    }
                }
                acc
            })
            .collect();
        sum(partials)
    }

    /// Side-by-side product.
    pub fn bullet(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                acc.add_term(x.concat(y), cx.mul(cy));
            }
        }
        acc
    }

    /// `⟨a, b⟩ = Σ a_x b_y δ^{close(x, y)}` over same-grade pairs.
    pub fn inner(&self, other: &Self) -> Scalar {
        // Σ_y b_y (Σ_x a_x δ^{close(x,y)}): the inner sum needs only shifts
        let laurent = self.terms.values().all(Scalar::is_laurent);
        let mut total = Scalar::zero();
        for (y, cy) in &other.terms {
            let mut acc_l = Laurent::zero();
            let mut acc_s = Scalar::zero();
            for (x, cx) in &self.terms {
                if x.grade() != y.grade() {
                    continue;
                }
                let loops = 2 * x.close(y).expect("same grade") as i32;
                if laurent {
                    acc_l.add_shifted_assign(cx.numer(), loops);
                } else {
                    acc_s = acc_s.add(&cx.shift(loops));
                }
            }
            let acc = if laurent { Scalar::from_laurent(acc_l) } else { acc_s };
            total = total.add(&acc.mul(cy));
        }
        total
    }

    pub fn norm_squared(&self) -> Scalar {
        self.inner(self)
    }

    /// `tr(a) = ⟨a, 1⟩`, the grade-0 coefficient.
    pub fn trace(&self) -> Scalar {
        self.coeff(&B::unit())
    }

    /// Termwise reflection; coefficients are real so they are unchanged.
    pub fn adjoint(&self) -> Self {
        let terms = self.terms.iter().map(|(d, c)| (d.reflect(), c.clone())).collect();
        GradedElement { terms }
    }

    /// Place a cap on one side of every term, weighting closed loops by `δ`.
    /// Grade-0 terms are annihilated.
    pub fn cap(&self, side: Side) -> Self {
        let mut acc = Self::zero();
        for (d, c) in &self.terms {
            if d.grade() == 0 {
                continue;
            }
            let (loops, e) = d.cap(side).expect("positive grade");
            acc.add_term(e, c.mul(&Scalar::delta_pow(loops as i32)));
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(d, c)| (d.clone(), f(c))))
    }

    /// Evaluate every coefficient at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BTreeMap<B, BigRational>, ScalarError> {
        self.terms.iter().map(|(d, c)| Ok((d.clone(), c.eval(q0)?))).collect()
    }

    /// Rescale so that all coefficients are polynomials in `q` with no common
    /// factor and no common power of `q`; the first term's leading
    /// coefficient is made positive.
    pub fn clear_denominators(&self) -> Self {
        let Some(first) = self.terms.values().next() else {
            return Self::zero();
        };
        let mut den = Laurent::one();
        for c in self.terms.values() {
            let d = c.denom();
            if !d.is_one() {
                let g = den.gcd(d);
                den = den.mul(&d.div_exact(&g));
            }
        }
        let scaled: Vec<Laurent> = self
            .terms
            .values()
            .map(|c| {
                let s = c.mul(&Scalar::from_laurent(den.clone()));
                debug_assert!(s.is_laurent());
                s.numer().clone()
            })
            .collect();
        let mut g = scaled[0].clone();
        for p in &scaled[1..] {
            g = g.gcd(p);
        }
        let g = Scalar::from_laurent(g);
        let mut factor = Scalar::from_laurent(den).div(&g).expect("nonzero gcd");
        // make the lowest power of q across all terms zero, then fix the sign
        let low = self.terms.values().map(|c| c.mul(&factor).numer().low()).min().expect("nonempty");
        factor = factor.shift(-low);
        if first.mul(&factor).numer().leading_coeff().is_some_and(|c| c < &num_bigint::BigInt::from(0)) {
            factor = factor.neg();
        }
        self.scale(&factor)
    }
}

/// Sum of a list of elements.
pub fn sum<B: PlanarBasis>(parts: impl IntoIterator<Item = GradedElement<B>>) -> GradedElement<B> {
    let mut acc = GradedElement::zero();
    for p in parts {
        if acc.is_zero() {
            acc = p;
        } else {
            acc.add_assign(&p);
        }
    }
    acc
}

impl<B: PlanarBasis> fmt::Debug for GradedElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", d.encode(), c)?;
        }
        write!(f, "}}")
    }
}

impl<B: PlanarBasis> fmt::Display for GradedElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let label = if d.grade() == 0 { "1".to_string() } else { format!("[{}]", d.encode()) };
            if c.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "({c})·{label}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    n: usize,
    d: String,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    terms: Vec<TermRepr>,
}

impl<B: PlanarBasis> Serialize for GradedElement<B> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(d, c)| TermRepr { n: d.grade(), d: d.encode(), c: c.clone() }).collect();
        ElementRepr { terms }.serialize(s)
    }
}

impl<'de, B: PlanarBasis> Deserialize<'de> for GradedElement<B> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let mut e = Self::zero();
        for t in repr.terms {
            let b = B::decode(t.n, &t.d).map_err(serde::de::Error::custom)?;
            e.add_term(b, t.c);
        }
        Ok(e)
    }
}

/// All basis diagrams of grades `0..=n`, grade by grade.
pub fn truncated_basis<B: PlanarBasis>(n: usize) -> Vec<B> {
    (0..=n).flat_map(B::basis).collect()
}

/// Matrix of a multiplication operator on `⊕_{k ≤ N} P_k` in the diagram basis.
///
/// Output components above grade `N` are dropped, so only columns whose
/// input grade is at most `exact_input_grade` are exact images.
#[derive(Clone, Debug, Serialize)]
pub struct OperatorMatrix<B: PlanarBasis = Diagram> {
    #[serde(skip)]
    pub basis: Vec<B>,
    pub cutoff: usize,
    /// Largest input grade whose image lies entirely in grades `<= cutoff`;
    /// `None` if no column is exact.
    pub exact_input_grade: Option<usize>,
    pub entries: ScalarMatrix,
}

impl<B: PlanarBasis> OperatorMatrix<B> {
    fn build(a: &GradedElement<B>, cutoff: usize, left: bool) -> Self {
        let max = a.max_grade().unwrap_or(0);
        assert!(max <= cutoff, "operator grade {max} exceeds cutoff {cutoff}");
        let basis: Vec<B> = truncated_basis(cutoff);
        let index: BTreeMap<&B, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let columns: Vec<Vec<Scalar>> = basis
            .par_iter()
            .map(|b| {
                let e = GradedElement::basis(b.clone());
                let img = if left { a.multiply(&e) } else { e.multiply(a) };
                let mut col = vec![Scalar::zero(); basis.len()];
                for (d, c) in img.terms() {
                    if let Some(&i) = index.get(d) {
                        col[i] = c.clone();
                    }
                }
                col
            })
            .collect();
        OperatorMatrix {
            cutoff,
            exact_input_grade: cutoff.checked_sub(max),
            entries: ScalarMatrix::from_columns(basis.len(), columns),
            basis,
        }
    }

    /// `b ↦ a·b`.
    pub fn left(a: &GradedElement<B>, cutoff: usize) -> Self {
        Self::build(a, cutoff, true)
    }

    /// `b ↦ b·a`.
    pub fn right(a: &GradedElement<B>, cutoff: usize) -> Self {
        Self::build(a, cutoff, false)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Indices of columns whose input grade is at most `g`.
    pub fn columns_up_to(&self, g: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].grade() <= g).collect()
    }

    pub fn column_is_exact(&self, j: usize) -> bool {
        self.exact_input_grade.is_some_and(|g| self.basis[j].grade() <= g)
    }

    /// The image of basis vector `j` as an element.
    pub fn column_element(&self, j: usize) -> GradedElement<B> {
        GradedElement::from_terms(self.basis.iter().cloned().zip(self.entries.column(j)))
    }
}

pub fn left_matrix(a: &GradedElement, cutoff: usize) -> OperatorMatrix {
    OperatorMatrix::left(a, cutoff)
}

pub fn right_matrix(a: &GradedElement, cutoff: usize) -> OperatorMatrix {
    OperatorMatrix::right(a, cutoff)
}

/// The Gram matrix `⟨x_i, x_j⟩ = δ^{close(x_i, x_j)}` of `P_n` in the diagram basis.
pub fn gram_matrix<B: PlanarBasis>(n: usize) -> ScalarMatrix {
    let basis = B::basis(n);
    let mut m = ScalarMatrix::zeros(basis.len(), basis.len());
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let loops = x.close(y).expect("same grade");
            m.set(i, j, Scalar::delta_pow(loops as i32));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cup() -> GradedElement {
        GradedElement::basis(Diagram::cup())
    }

    fn d(s: &str) -> GradedElement {
        GradedElement::basis(Diagram::from_parens(s).unwrap())
    }

    #[test]
    fn combine_examples() {
        let one = Scalar::one();
        assert!(GradedElement::combine(&cup(), &cup(), &one, &one.neg()).is_zero());
        let e = GradedElement::combine(&GradedElement::one(), &cup(), &one, &one);
        assert_eq!((e.min_grade(), e.max_grade()), (Some(0), Some(1)));
    }

    #[test]
    fn cup_squared() {
        let expected = d("()()").add(&cup()).add(&GradedElement::one().scale(&Scalar::delta()));
        assert_eq!(cup().multiply(&cup()), expected);
        assert_eq!(cup().multiply(&cup()).trace(), Scalar::delta());
    }

    #[test]
    fn cup_cubed_is_associative() {
        let c = cup();
        assert_eq!(c.multiply(&c).multiply(&c), c.multiply(&c.multiply(&c)));
    }

    #[test]
    fn inner_examples() {
        assert_eq!(cup().inner(&cup()), Scalar::delta());
        assert_eq!(d("()()").inner(&d("(())")), Scalar::delta());
        assert_eq!(GradedElement::one().inner(&cup()), Scalar::zero());
        assert_eq!(cup().trace(), Scalar::zero());
        assert_eq!(GradedElement::<Diagram>::one().trace(), Scalar::one());
    }

    #[test]
    fn bullet_and_adjoint() {
        assert_eq!(cup().bullet(&cup()), d("()()"));
        assert_eq!(GradedElement::one().bullet(&d("(())")), d("(())"));
        assert_eq!(cup().adjoint(), cup());
        let x = d("()(())").scale(&Scalar::q_pow(3));
        assert_eq!(x.adjoint(), d("(())()").scale(&Scalar::q_pow(3)));
    }

    #[test]
    fn left_matrix_examples() {
        let id = left_matrix(&GradedElement::one(), 3);
        assert_eq!(id.entries, ScalarMatrix::identity(id.dim()));
        let l = left_matrix(&cup(), 4);
        assert_eq!(l.column_element(0), cup());
        assert_eq!(l.exact_input_grade, Some(3));
    }

    #[test]
    fn left_and_right_cup_commute_below_the_boundary() {
        let n = 4;
        let l = left_matrix(&cup(), n);
        let r = right_matrix(&cup(), n);
        let comm = l.entries.mul(&r.entries).sub(&r.entries.mul(&l.entries));
        let cols = l.columns_up_to(n - 2);
        let rows: Vec<usize> = (0..l.dim()).collect();
        assert!(comm.select(&rows, &cols).is_zero());
    }

    #[test]
    fn clear_denominators_gives_primitive_laurent_coefficients() {
        let x = d("()()").scale(&Scalar::q_pow(2).recip().unwrap()).add(&d("(())").scale(&Scalar::from_int(-3)));
        let y = x.clear_denominators();
        assert_eq!(y, d("()()").scale(&Scalar::from_int(-1)).add(&d("(())").scale(&Scalar::from_int(3).shift(2))));
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&cup()).unwrap();
        assert_eq!(j, r#"{"terms":[{"n":1,"d":"()","c":{"num":[[0,"1"]],"den":[[0,"1"]]}}]}"#);
        let back: GradedElement = serde_json::from_str(&j).unwrap();
        assert_eq!(back, cup());
    }
}
