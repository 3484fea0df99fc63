//! The cup subalgebra and the decomposition of `Gr(TL)` it induces.

pub mod action;
pub mod cache;
pub mod theta;
pub mod vn;

use crate::graded::GradedElement;
use crate::tl::Diagram;

/// `∪^{•k}`: zero for `k < 0`, the unit for `k = 0`.
pub fn cup_power(k: i64) -> GradedElement {
    match k {
        k if k < 0 => GradedElement::zero(),
        k => GradedElement::basis(Diagram::cup_power(k as usize)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cup_power_conventions() {
        assert!(cup_power(-1).is_zero());
        assert_eq!(cup_power(0), GradedElement::one());
        assert_eq!(cup_power(2), GradedElement::basis(Diagram::from_pairs(&[(1, 2), (3, 4)]).unwrap()));
    }
}
