//! `⟨zb, bz⟩ = 0` for `z` padded by at least `J` cups on both sides and `b`
//! padded by at most `J - 1`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{AopError, NamedVector};
use crate::cup::theta::{padded, Subspace, ThetaBasis, ThetaLabel};
use crate::graded::GradedElement;
use crate::report::Report;
use crate::scalar::Scalar;

/// `⟨zb, bz⟩`, after checking through Θ coordinates that `z` lies on middle
/// labels with `l, r ≥ J` and `b` on middle labels with `l, r ≤ J - 1`.
pub fn orthogonality_check(z: &GradedElement, b: &GradedElement, j: usize, basis: &ThetaBasis) -> Result<Scalar, AopError> {
    if j == 0 {
        return Err(AopError::InvalidArgument("J must be positive".into()));
    }
    let zc = basis.exact_coords(z)?;
    if let Some(bad) = zc.keys().find(|lab| !matches!(**lab, ThetaLabel::Middle { l, r, .. } if l >= j && r >= j)) {
        return Err(AopError::Membership(format!("z has a coordinate on {bad:?}, outside the span of l, r >= {j}")));
    }
    let bc = basis.exact_coords(b)?;
    if let Some(bad) = bc.keys().find(|lab| !Subspace::Y.contains(lab, j - 1)) {
        return Err(AopError::Membership(format!("b has a coordinate on {bad:?}, outside Y_{}", j - 1)));
    }
    Ok(z.multiply(b).inner(&b.multiply(z)))
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityCase {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub r: usize,
    #[serde(rename = "J")]
    pub big_j: usize,
    pub v: String,
    pub w: String,
    pub value: Scalar,
}

/// `z = ∪^{•i}∙v∙∪^{•j}`, `b = ∪^{•k}∙w∙∪^{•r}` for `i, j ∈ {1, 2}`,
/// `k, r ∈ {0, 1}`, `v, w` over the `V_2` and `V_3` bases, keeping the tuples
/// for which `J = max(k, r) + 1 ≤ min(i, j)`.
pub fn orthogonality_family() -> Result<Report, AopError> {
    let vectors = NamedVector::all([2, 3]);
    let mut tuples = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 0..=1 {
                for r in 0..=1 {
                    let big_j = k.max(r) + 1;
                    if big_j > i.min(j) {
                        continue;
                    }
                    for v in &vectors {
                        for w in &vectors {
                            tuples.push((i, j, k, r, big_j, v, w));
                        }
                    }
                }
            }
        }
    }
    let basis = ThetaBasis::truncated(7, 3);
    let cases: Result<Vec<OrthogonalityCase>, AopError> = tuples
        .par_iter()
        .map(|&(i, j, k, r, big_j, v, w)| {
            let z = padded(&v.element, i, j);
            let b = padded(&w.element, k, r);
            let value = orthogonality_check(&z, &b, big_j, &basis)?;
            Ok(OrthogonalityCase { i, j, k, r, big_j, v: v.id.clone(), w: w.id.clone(), value })
        })
        .collect();
    let cases = cases?;
    let pass = cases.iter().all(|c| c.value.is_zero());
    let data = json!({ "cases": cases.len(), "all_zero": pass, "results": cases });
    Ok(Report::new("aop-orth", json!({ "grades": [2, 3] }), pass, data))
}
