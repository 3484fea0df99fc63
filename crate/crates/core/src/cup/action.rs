//! Left and right multiplication by the cup, measured in the labeled basis.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::theta::{Subspace, ThetaBasis, ThetaCoords, ThetaError, ThetaLabel};
use crate::graded::{truncated_basis, GradedElement};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::tl::Diagram;

/// Sparse operator in label coordinates: column label -> image coordinates.
pub type LabelOperator = BTreeMap<ThetaLabel, ThetaCoords>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Action {
    Left,
    Right,
}

fn cup() -> GradedElement {
    GradedElement::basis(Diagram::cup())
}

/// Measure `π(∪)` or `ρ(∪)` on every label of grade `< level` (the columns
/// whose image stays within the basis).
pub fn measure_cup_action(basis: &ThetaBasis, action: Action) -> Result<LabelOperator, ThetaError> {
    let interior: Vec<ThetaLabel> = basis.labels().iter().copied().filter(|l| l.grade() < basis.level()).collect();
    let columns: Result<Vec<(ThetaLabel, ThetaCoords)>, ThetaError> = interior
        .par_iter()
        .map(|label| {
            let f = basis.element(label);
            let img = match action {
                Action::Left => cup().multiply(&f),
                Action::Right => f.multiply(&cup()),
            };
            Ok((*label, basis.coords(&img)?))
        })
        .collect();
    Ok(columns?.into_iter().collect())
}

/// The predicted column: `1 + q(S + S*)` on the `l` (left) or `r` (right)
/// index, and on the cup labels `q e_{k+1} + e_k + q e_{k-1}` except that
/// label 0 maps to `q e_1` only.
pub fn predicted_cup_column(label: &ThetaLabel, action: Action) -> ThetaCoords {
    let q = Scalar::q_pow(1);
    let mut out = ThetaCoords::new();
    match *label {
        ThetaLabel::Cup { k } => {
            out.insert(ThetaLabel::Cup { k: k + 1 }, q.clone());
            if k >= 1 {
                out.insert(ThetaLabel::Cup { k }, Scalar::one());
                out.insert(ThetaLabel::Cup { k: k - 1 }, q);
            }
        }
        ThetaLabel::Middle { l, m, i, r } => {
            let at = |s: usize| match action {
                Action::Left => ThetaLabel::Middle { l: s, m, i, r },
                Action::Right => ThetaLabel::Middle { l, m, i, r: s },
            };
            let s = if action == Action::Left { l } else { r };
            out.insert(at(s + 1), q.clone());
            out.insert(at(s), Scalar::one());
            if s >= 1 {
                out.insert(at(s - 1), q);
            }
        }
    }
    out
}

fn apply(op: &LabelOperator, x: &ThetaCoords) -> Option<ThetaCoords> {
    let mut out = ThetaCoords::new();
    for (label, c) in x {
        for (t, e) in op.get(label)? {
            let v = out.get(t).map_or_else(|| e.mul(c), |s| s.add(&e.mul(c)));
            if v.is_zero() {
                out.remove(t);
            } else {
                out.insert(*t, v);
            }
        }
    }
    Some(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CupBlockEntry {
    pub k: usize,
    pub sub: Scalar,
    pub diag: Scalar,
    pub sup: Scalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct CupActionData {
    pub level: usize,
    pub labels: usize,
    pub interior_columns: usize,
    pub boundary_columns: usize,
    pub left_matches_prediction: bool,
    pub right_matches_prediction: bool,
    pub block_diagonal: bool,
    pub commutator_zero: bool,
    pub cup_block: Vec<CupBlockEntry>,
    /// `(0,0)` entry of `π(∪)` on the cup labels.
    pub measured_cup_00: Scalar,
    /// `(0,0)` entry of `π((∪ - 1)/q)`: the coefficient of `q_{e_0}`, with sign.
    pub measured_qe0_coefficient: Scalar,
    pub witnesses: Vec<String>,
}

/// Measure `π(∪)` and `ρ(∪)` in the labeled basis of level `level` and
/// compare with the predicted block structure.
pub fn check_cup_action(level: usize) -> Result<Report, ThetaError> {
    check_cup_action_with(&ThetaBasis::new(level))
}

pub fn check_cup_action_with(basis: &ThetaBasis) -> Result<Report, ThetaError> {
    let level = basis.level();
    if level < 3 {
        return Err(ThetaError::LevelTooSmall { level, min: 3 });
    }
    let left = measure_cup_action(basis, Action::Left)?;
    let right = measure_cup_action(basis, Action::Right)?;
    let mut witnesses = Vec::new();

    let mut compare = |op: &LabelOperator, action: Action| {
        let mut ok = true;
        for (label, col) in op {
            let predicted = predicted_cup_column(label, action);
            if col != &predicted {
                ok = false;
                if witnesses.len() < 20 {
                    witnesses.push(format!("{action:?} column {label:?}: measured {col:?}, predicted {predicted:?}"));
                }
            }
        }
        ok
    };
    let left_ok = compare(&left, Action::Left);
    let right_ok = compare(&right, Action::Right);

    let block_diagonal = [&left, &right]
        .iter()
        .all(|op| op.iter().all(|(label, col)| col.keys().all(|t| t.is_middle() == label.is_middle())));

    // [π(∪), ρ(∪)] on labels two grades below the boundary
    let mut commutator_zero = true;
    for label in basis.labels().iter().filter(|l| l.grade() + 2 <= level) {
        let e = ThetaCoords::from([(*label, Scalar::one())]);
        let lr = apply(&right, &e).and_then(|x| apply(&left, &x));
        let rl = apply(&left, &e).and_then(|x| apply(&right, &x));
        if lr.is_none() || lr != rl {
            commutator_zero = false;
            witnesses.push(format!("commutator nonzero at {label:?}"));
        }
    }

    let entry = |op: &LabelOperator, row: usize, col: usize| -> Scalar {
        op.get(&ThetaLabel::Cup { k: col })
            .and_then(|c| c.get(&ThetaLabel::Cup { k: row }))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    };
    let cup_block: Vec<CupBlockEntry> = (1..level)
        .map(|k| CupBlockEntry {
            k,
            sub: entry(&left, k + 1, k),
            diag: entry(&left, k, k),
            sup: entry(&left, k - 1, k),
        })
        .collect();
    let measured_cup_00 = entry(&left, 0, 0);
    let measured_qe0_coefficient = measured_cup_00.sub(&Scalar::one()).mul(&Scalar::q_pow(-1));

    let interior = left.len();
    let data = CupActionData {
        level,
        labels: basis.labels().len(),
        interior_columns: interior,
        boundary_columns: basis.labels().len() - interior,
        left_matches_prediction: left_ok,
        right_matches_prediction: right_ok,
        block_diagonal,
        commutator_zero,
        cup_block,
        measured_cup_00,
        measured_qe0_coefficient,
        witnesses,
    };
    let pass = left_ok && right_ok && block_diagonal && commutator_zero;
    Ok(Report::new("theta-cup-action", json!({ "level": level }), pass, data))
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityData {
    pub level: usize,
    pub labels: usize,
    pub pairs_checked: usize,
    pub witnesses: Vec<String>,
}

/// Exact check of `⟨f_λ, f_μ⟩ = w_λ [λ = μ]` for all labels up to `level`.
pub fn theta_orthogonality(basis: &ThetaBasis) -> Report {
    let labels: Vec<ThetaLabel> = basis.labels().to_vec();
    let elements: Vec<GradedElement> = labels.par_iter().map(|l| basis.element(l)).collect();
    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|a| (a..labels.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| labels[a].grade() == labels[b].grade())
        .collect();
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let got = elements[a].inner(&elements[b]);
            let want = if a == b { basis.weight(&labels[a]) } else { Scalar::zero() };
            (got != want).then(|| format!("<{:?}, {:?}> = {got}, expected {want}", labels[a], labels[b]))
        })
        .collect();
    let data = OrthogonalityData {
        level: basis.level(),
        labels: labels.len(),
        pairs_checked: pairs.len(),
        witnesses: bad.iter().take(20).cloned().collect(),
    };
    Report::new("theta-orthogonality", json!({ "level": basis.level() }), bad.is_empty(), data)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectorData {
    pub j: usize,
    pub level: usize,
    pub rank: usize,
    pub idempotent: bool,
    pub self_adjoint: bool,
}

/// `Q_J` is idempotent and self-adjoint for the diagram inner product,
/// checked one grade block at a time.
pub fn check_qj_projector(basis: &ThetaBasis, j: usize) -> Result<Report, ThetaError> {
    let q = basis.qj_projector(j)?;
    let all: Vec<Diagram> = truncated_basis(basis.level());
    let mut idempotent = true;
    let mut self_adjoint = true;
    let mut rank = 0;
    for n in 0..=basis.level() {
        let idx: Vec<usize> = (0..all.len()).filter(|&i| all[i].grade() == n).collect();
        let block = q.entries.select(&idx, &idx);
        idempotent &= block.mul(&block) == block;
        let gram = crate::graded::gram_matrix::<Diagram>(n);
        let gq = gram.mul(&block);
        self_adjoint &= gq == gq.transpose();
        rank += block.rank();
    }
    let count = basis.labels().iter().filter(|l| Subspace::Z.contains(l, j - 1)).count();
    let data = ProjectorData { j, level: basis.level(), rank, idempotent, self_adjoint };
    let pass = idempotent && self_adjoint && rank == count;
    Ok(Report::new("qj-projector", json!({ "j": j, "level": basis.level() }), pass, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cup_action_at_level_four() {
        let r = check_cup_action(4).unwrap();
        assert!(r.pass, "{:#?}", r.data);
        assert_eq!(r.data["measured_cup_00"], serde_json::to_value(Scalar::zero()).unwrap());
        let expected = Scalar::q_pow(-1).neg();
        assert_eq!(r.data["measured_qe0_coefficient"], serde_json::to_value(expected).unwrap());
    }

    #[test]
    fn orthogonality_at_level_four() {
        assert!(theta_orthogonality(&ThetaBasis::new(4)).pass);
    }

    #[test]
    fn projector_at_level_four() {
        let b = ThetaBasis::new(4);
        for j in 1..=3 {
            let r = check_qj_projector(&b, j).unwrap();
            assert!(r.pass, "{:?}", r.data);
        }
    }
}
