//! Finite checks behind the approximate orthogonality argument: closure of
//! `V` under cup-padded bullets, the product expansion of padded elements,
//! `zb ⊥ bz`, and the norm inequality chain on the double shift space.

pub mod certificate;
pub mod expansion;
pub mod orthogonality;

use thiserror::Error;

use crate::cup::cup_power;
use crate::cup::theta::{shared_vm, ThetaError};
use crate::cup::vn::is_cap_killed;
use crate::graded::GradedElement;

pub use certificate::{near_commuting_vector, pythagoras_certificate, random_certificates, CertificateData, CertificateOps};
pub use expansion::{expansion_check, ExpansionReport, ExpansionTerm};
pub use orthogonality::{orthogonality_check, orthogonality_family, OrthogonalityCase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AopError {
    #[error("{which} is not in V (a cap does not kill it)")]
    NotInV { which: &'static str },
    #[error("no basis vector v[{m},{index}]")]
    UnknownVector { m: usize, index: usize },
    #[error("membership violated: {0}")]
    Membership(String),
    #[error("defect precondition violated: {0}")]
    Defect(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// `v ∈ V`: supported in grades at least 2 and killed by both caps.
pub fn in_v(v: &GradedElement) -> bool {
    v.min_grade().is_none_or(|g| g >= 2) && is_cap_killed(v)
}

/// A stored `V_m` basis vector together with its label `v[m,i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedVector {
    pub id: String,
    pub m: usize,
    pub element: GradedElement,
}

impl NamedVector {
    pub fn basis(m: usize, index: usize) -> Result<Self, AopError> {
        let vb = shared_vm(m);
        let element = vb.vectors.get(index).cloned().ok_or(AopError::UnknownVector { m, index })?;
        Ok(NamedVector { id: format!("v[{m},{index}]"), m, element })
    }

    /// Every basis vector of `V_m` for `m` in `grades`.
    pub fn all(grades: impl IntoIterator<Item = usize>) -> Vec<Self> {
        grades
            .into_iter()
            .flat_map(|m| (0..shared_vm(m).vectors.len()).map(move |i| Self::basis(m, i).expect("in range")))
            .collect()
    }
}

/// `v ∙ ∪^{•n} ∙ w` stays in `V`.
pub fn bullet_closure_check(v: &GradedElement, n: usize, w: &GradedElement) -> Result<bool, AopError> {
    if !in_v(v) {
        return Err(AopError::NotInV { which: "left factor" });
    }
    if !in_v(w) {
        return Err(AopError::NotInV { which: "right factor" });
    }
    Ok(in_v(&v.bullet(&cup_power(n as i64)).bullet(w)))
}

/// `∪^{•l} ∙ x ∙ ∪^{•r}` without normalization.
pub fn pad(x: &GradedElement, l: usize, r: usize) -> GradedElement {
    cup_power(l as i64).bullet(x).bullet(&cup_power(r as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let v2 = NamedVector::basis(2, 0).unwrap().element;
        let v3 = NamedVector::basis(3, 1).unwrap().element;
        assert!(bullet_closure_check(&v2, 0, &v2).unwrap());
        assert!(bullet_closure_check(&v2, 2, &v2).unwrap());
        assert!(bullet_closure_check(&v2, 1, &v3).unwrap());
        let cup = cup_power(1);
        assert!(matches!(bullet_closure_check(&cup, 0, &v2), Err(AopError::NotInV { .. })));
        assert!(NamedVector::basis(2, 5).is_err());
    }
}
