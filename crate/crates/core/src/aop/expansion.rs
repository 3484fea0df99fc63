//! `(∪^{•i}∙v∙∪^{•j})(∪^{•k}∙w∙∪^{•r})` decomposed over `∪^{•i}∙(v∙∪^{•n}∙w)∙∪^{•r}`.

use serde::Serialize;
use serde_json::json;

use super::{in_v, pad, AopError, NamedVector};
use crate::cup::cup_power;
use crate::cup::theta::{ThetaBasis, ThetaLabel};
use crate::graded::GradedElement;
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTerm {
    /// Number of cups between `v` and `w`.
    pub n: usize,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub r: usize,
    pub v: String,
    pub w: String,
    pub m_v: usize,
    pub m_w: usize,
    /// `j ≠ k`. The displayed case is `j > k`; `j < k` is its mirror image
    /// (the product `bz`), with `δ^{min(j, k)}` at the bottom.
    pub within_hypothesis: bool,
    /// Terms in decreasing `n`; absent `n` have coefficient 0.
    pub terms: Vec<ExpansionTerm>,
    /// Grades of the product that are not a multiple of a predicted term.
    pub off_span_grades: Vec<usize>,
    pub span_ok: bool,
    /// Every `v∙∪^{•n}∙w` that occurs is in `V`.
    pub closure_ok: bool,
    /// `n = j + k` has coefficient 1.
    pub top_ok: bool,
    /// `n = |j - k|` and `n = |j - k| - 1` (when nonnegative) have coefficient
    /// `δ^{min(j, k)}`.
    pub bottom_ok: bool,
    /// Support of the Θ coordinates on middle labels `(l ≥ i, r)`, when the
    /// product fits in the supplied basis.
    pub theta_support: Option<bool>,
    pub template_match: bool,
}

impl ExpansionReport {
    pub fn endpoints_ok(&self) -> bool {
        self.top_ok && self.bottom_ok
    }

    pub fn coefficient(&self, n: usize) -> Scalar {
        self.terms.iter().find(|t| t.n == n).map_or_else(Scalar::zero, |t| t.coeff.clone())
    }

    /// Key used to store the coefficient list in a golden file.
    pub fn golden_key(&self) -> String {
        format!("{},{},{},{},{},{}", self.i, self.j, self.k, self.r, self.m_v, self.m_w)
    }

    /// Coefficients over `n = j + k, j + k - 1, …, max(|j - k| - 1, 0)`.
    pub fn coefficient_list(&self) -> Vec<Scalar> {
        let lo = self.j.abs_diff(self.k).saturating_sub(1);
        (lo..=self.j + self.k).rev().map(|n| self.coefficient(n)).collect()
    }

    pub fn to_report(&self) -> Report {
        let params = json!({ "i": self.i, "j": self.j, "k": self.k, "r": self.r, "v": self.v, "w": self.w });
        let pass = if self.within_hypothesis { self.template_match } else { self.endpoints_ok() && self.closure_ok };
        Report::new("aop-expansion", params, pass, self)
    }
}

/// Multiply the padded elements by brute force and read off the coefficient of
/// each `∪^{•i}∙(v∙∪^{•n}∙w)∙∪^{•r}`. Distinct `n` live in distinct grades, so
/// each grade of the product is tested for being a multiple of one term.
pub fn expansion_check(
    i: usize,
    j: usize,
    k: usize,
    r: usize,
    v: &NamedVector,
    w: &NamedVector,
    theta: Option<&ThetaBasis>,
) -> Result<ExpansionReport, AopError> {
    if !in_v(&v.element) {
        return Err(AopError::NotInV { which: "v" });
    }
    if !in_v(&w.element) {
        return Err(AopError::NotInV { which: "w" });
    }
    let left = pad(&v.element, i, j);
    let right = pad(&w.element, k, r);
    let product = left.multiply(&right);
    let base = i + v.m + w.m + r;
    let gap = j.abs_diff(k);
    let lo = gap.saturating_sub(1);
    let hi = j + k;

    let mut terms = Vec::new();
    let mut off_span = Vec::new();
    let mut closure_ok = true;
    for g in (0..=product.max_grade().unwrap_or(0)).rev() {
        let part = product.part(g);
        if part.is_zero() {
            continue;
        }
        let Some(n) = g.checked_sub(base).filter(|n| (lo..=hi).contains(n)) else {
            off_span.push(g);
            continue;
        };
        let middle = v.element.bullet(&cup_power(n as i64)).bullet(&w.element);
        closure_ok &= in_v(&middle);
        let template = pad(&middle, i, r);
        match multiple_of(&part, &template) {
            Some(c) => terms.push(ExpansionTerm { n, coeff: c }),
            None => off_span.push(g),
        }
    }

    let coeff = |n: usize| terms.iter().find(|t| t.n == n).map_or_else(Scalar::zero, |t| t.coeff.clone());
    let dk = Scalar::delta_pow(j.min(k) as i32);
    let top_ok = coeff(hi).is_one();
    let bottom_ok = coeff(gap) == dk && (gap == 0 || coeff(gap - 1) == dk);

    let theta_support = match theta {
        Some(basis) if product.max_grade().unwrap_or(0) <= basis.level() => {
            let coords = basis.exact_coords(&product)?;
            Some(coords.keys().all(|lab| matches!(*lab, ThetaLabel::Middle { l, r: rr, .. } if l >= i && rr == r)))
        }
        _ => None,
    };
    let span_ok = off_span.is_empty();
    let template_match = span_ok && closure_ok && top_ok && bottom_ok && theta_support != Some(false);
    Ok(ExpansionReport {
        i,
        j,
        k,
        r,
        v: v.id.clone(),
        w: w.id.clone(),
        m_v: v.m,
        m_w: w.m,
        within_hypothesis: j != k,
        terms,
        off_span_grades: off_span,
        span_ok,
        closure_ok,
        top_ok,
        bottom_ok,
        theta_support,
        template_match,
    })
}

/// `c` with `x = c·t`, if any.
fn multiple_of(x: &GradedElement, t: &GradedElement) -> Option<Scalar> {
    let (d, a) = t.terms().next()?;
    let c = x.coeff(d).div(a).ok()?;
    x.sub(&t.scale(&c)).is_zero().then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(m: usize, i: usize) -> NamedVector {
        NamedVector::basis(m, i).unwrap()
    }

    #[test]
    fn endpoints_inside_hypothesis() {
        let r = expansion_check(1, 2, 1, 1, &v(2, 0), &v(2, 0), None).unwrap();
        assert!(r.within_hypothesis);
        assert!(r.template_match, "{r:?}");
        assert_eq!(r.coefficient(3), Scalar::one());
        assert_eq!(r.coefficient(1), Scalar::delta());
        assert_eq!(r.coefficient(0), Scalar::delta());
    }

    #[test]
    fn mirrored_product() {
        // b z with b = w ∪^{•1}, z = ∪^{•2} v ∪^{•2}
        let r = expansion_check(0, 1, 2, 2, &v(3, 0), &v(2, 0), None).unwrap();
        assert!(r.template_match, "{r:?}");
        assert_eq!(r.coefficient(3), Scalar::one());
        assert_eq!(r.coefficient(0), Scalar::delta());
    }

    #[test]
    fn k_zero_has_two_terms() {
        let r = expansion_check(0, 2, 0, 0, &v(2, 0), &v(3, 0), None).unwrap();
        assert!(r.template_match);
        assert_eq!(r.terms.len(), 2);
        assert!(r.terms.iter().all(|t| t.coeff.is_one()));
    }

    #[test]
    fn equal_inner_counts_leave_the_span() {
        let basis = ThetaBasis::new(6);
        let r = expansion_check(0, 1, 1, 0, &v(2, 0), &v(2, 0), Some(&basis)).unwrap();
        assert!(!r.within_hypothesis);
        assert!(r.endpoints_ok());
        assert_eq!(r.coefficient(2), Scalar::one());
        assert_eq!(r.coefficient(0), Scalar::delta());
        assert!(!r.span_ok);
        assert!(r.off_span_grades.contains(&3), "{:?}", r.off_span_grades);
        assert_eq!(r.theta_support, Some(false));
    }
}
