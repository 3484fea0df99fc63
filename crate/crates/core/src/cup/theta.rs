//! The labeled orthogonal basis of `⊕_{n ≤ N} P_n` adapted to the cup
//! subalgebra: cup labels `q^{-k} ∪^{•k}` and middle labels
//! `q^{-(l+r)} ∪^{•l} ∙ v ∙ ∪^{•r}` with `v` running over a basis of `V_m`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::cup_power;
use super::vn::compute_vn;
use crate::graded::{truncated_basis, GradedElement, OperatorMatrix};
use crate::linalg::ScalarMatrix;
use crate::scalar::Scalar;
use crate::tl::{Diagram, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("element is not spanned by labels with middle grade at most {max_m}")]
    Incomplete { max_m: usize },
    #[error("element has support in grade {grade}, above the basis level {level}")]
    SupportExceedsLevel { grade: usize, level: usize },
    #[error("level {level} too small for this check (need at least {min})")]
    LevelTooSmall { level: usize, min: usize },
    #[error("{0}")]
    Cache(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ThetaLabel {
    Cup { k: usize },
    Middle { l: usize, m: usize, i: usize, r: usize },
}

impl ThetaLabel {
    pub fn grade(&self) -> usize {
        match *self {
            ThetaLabel::Cup { k } => k,
            ThetaLabel::Middle { l, m, r, .. } => l + m + r,
        }
    }

    pub fn is_middle(&self) -> bool {
        matches!(self, ThetaLabel::Middle { .. })
    }
}

/// Which subspace a membership query refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Subspace {
    /// Middle labels with `l ≤ L` and `r ≤ L`.
    Y,
    /// Middle labels with `l ≤ L` or `r ≤ L`.
    Z,
}

impl Subspace {
    pub fn contains(&self, label: &ThetaLabel, bound: usize) -> bool {
        match (*self, *label) {
            (_, ThetaLabel::Cup { .. }) => false,
            (Subspace::Y, ThetaLabel::Middle { l, r, .. }) => l <= bound && r <= bound,
            (Subspace::Z, ThetaLabel::Middle { l, r, .. }) => l <= bound || r <= bound,
        }
    }
}

/// Coordinates of an element: nonzero entries only.
pub type ThetaCoords = BTreeMap<ThetaLabel, Scalar>;

/// A stored orthogonal basis of `V_m` with squared norms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct VmBasis {
    pub m: usize,
    pub vectors: Vec<GradedElement>,
    pub norms: Vec<Scalar>,
}

impl VmBasis {
    pub fn compute(m: usize) -> Self {
        let vectors = if m >= 2 { compute_vn(m) } else { Vec::new() };
        let norms = vectors.par_iter().map(|v| v.norm_squared()).collect();
        VmBasis { m, vectors, norms }
    }
}

/// `V_m` basis shared within the process.
pub fn shared_vm(m: usize) -> Arc<VmBasis> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<VmBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(b) = cache.lock().expect("vm cache").get(&m) {
        return b.clone();
    }
    let b = Arc::new(VmBasis::compute(m));
    cache.lock().expect("vm cache").entry(m).or_insert(b).clone()
}

#[derive(Debug, Clone)]
pub struct ThetaBasis {
    level: usize,
    vbases: Vec<Arc<VmBasis>>,
    labels: Vec<ThetaLabel>,
}

impl ThetaBasis {
    /// Build the basis up to grade `level`, computing (or reusing in-process)
    /// the `V_m` bases.
    pub fn new(level: usize) -> Self {
        let vbases = (0..=level).map(shared_vm).collect();
        Self::from_vbases(level, vbases)
    }

    /// Labels up to grade `level` whose middle part has grade at most `max_m`.
    /// Coordinates are then only meaningful through [`ThetaBasis::exact_coords`].
    pub fn truncated(level: usize, max_m: usize) -> Self {
        let vbases = (0..=max_m.min(level)).map(shared_vm).collect();
        Self::from_vbases(level, vbases)
    }

    /// Build from explicitly supplied `V_m` bases, `vbases[m]` for `m ≤ max_m`.
    pub fn from_vbases(level: usize, vbases: Vec<Arc<VmBasis>>) -> Self {
        assert!(!vbases.is_empty() && vbases.len() <= level + 1);
        let max_m = vbases.len() - 1;
        let mut labels: Vec<ThetaLabel> = (0..=level).map(|k| ThetaLabel::Cup { k }).collect();
        for l in 0..=level {
            for m in 2..=(level - l).min(max_m) {
                for i in 0..vbases[m].vectors.len() {
                    for r in 0..=level - l - m {
                        labels.push(ThetaLabel::Middle { l, m, i, r });
                    }
                }
            }
        }
        labels.sort();
        ThetaBasis { level, vbases, labels }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn labels(&self) -> &[ThetaLabel] {
        &self.labels
    }

    pub fn vbasis(&self, m: usize) -> &VmBasis {
        &self.vbases[m]
    }

    pub fn vbases(&self) -> &[Arc<VmBasis>] {
        &self.vbases
    }

    /// Largest middle grade carried by the labels.
    pub fn max_middle(&self) -> usize {
        self.vbases.len() - 1
    }

    pub fn is_complete(&self) -> bool {
        self.max_middle() == self.level
    }

    /// Squared norm of the basis element for `label` (1 for cup labels).
    pub fn weight(&self, label: &ThetaLabel) -> Scalar {
        match *label {
            ThetaLabel::Cup { .. } => Scalar::one(),
            ThetaLabel::Middle { m, i, .. } => self.vbases[m].norms[i].clone(),
        }
    }

    /// The element of `Gr(TL)` a label stands for.
    pub fn element(&self, label: &ThetaLabel) -> GradedElement {
        match *label {
            ThetaLabel::Cup { k } => cup_power(k as i64).scale(&Scalar::q_pow(-(k as i32))),
            ThetaLabel::Middle { l, m, i, r } => padded(&self.vbases[m].vectors[i], l, r),
        }
    }

    /// Coordinates of `x` against the labeled basis: `⟨x, f⟩ / ⟨f, f⟩`.
    pub fn coords(&self, x: &GradedElement) -> Result<ThetaCoords, ThetaError> {
        if let Some(g) = x.max_grade().filter(|&g| g > self.level) {
            return Err(ThetaError::SupportExceedsLevel { grade: g, level: self.level });
        }
        let grades: Vec<usize> = (0..=x.max_grade().unwrap_or(0)).filter(|&g| !x.part(g).is_zero()).collect();
        let parts: Vec<ThetaCoords> = grades.par_iter().map(|&g| self.coords_homogeneous(&x.part(g), g)).collect();
        Ok(parts.into_iter().flatten().collect())
    }

    fn coords_homogeneous(&self, x: &GradedElement, g: usize) -> ThetaCoords {
        // ⟨∪^{•l} ∙ v ∙ ∪^{•r}, x⟩ = ⟨v, cap_left^l cap_right^r x⟩
        let mut out = ThetaCoords::new();
        let mut right = x.clone();
        for r in 0..=g {
            let mut y = right.clone();
            for l in 0..=g - r {
                let m = g - l - r;
                let scale = Scalar::q_pow(-((l + r) as i32));
                if m == 0 {
                    if r == 0 {
                        let c = y.trace().mul(&scale);
                        if !c.is_zero() {
                            out.insert(ThetaLabel::Cup { k: g }, c);
                        }
                    }
                } else if m >= 2 && m <= self.max_middle() && !y.is_zero() {
                    let vb = &self.vbases[m];
                    for (i, v) in vb.vectors.iter().enumerate() {
                        let c = y.inner(v).mul(&scale).div(&vb.norms[i]).expect("nonzero norm");
                        if !c.is_zero() {
                            out.insert(ThetaLabel::Middle { l, m, i, r }, c);
                        }
                    }
                }
                if l < g - r {
                    y = y.cap(Side::Left);
                }
            }
            if r < g {
                right = right.cap(Side::Right);
            }
        }
        out
    }

    /// Coordinates together with a proof that they span `x`: on a truncated
    /// basis the reconstruction is compared with `x` exactly.
    pub fn exact_coords(&self, x: &GradedElement) -> Result<ThetaCoords, ThetaError> {
        let coords = self.coords(x)?;
        if !self.is_complete() && self.reconstruct(&coords) != *x {
            return Err(ThetaError::Incomplete { max_m: self.max_middle() });
        }
        Ok(coords)
    }

    /// `Σ c_λ f_λ`.
    pub fn reconstruct(&self, coords: &ThetaCoords) -> GradedElement {
        let parts: Vec<GradedElement> = coords.par_iter().map(|(l, c)| self.element(l).scale(c)).collect();
        crate::graded::sum(parts)
    }

    /// Subspace membership of `x` (at most `bound` in the label sense).
    pub fn membership(&self, x: &GradedElement, which: Subspace, bound: usize) -> Result<bool, ThetaError> {
        Ok(self.exact_coords(x)?.keys().all(|l| which.contains(l, bound)))
    }

    /// The projection `Q_J` onto the span of middle labels with `l ≤ J-1`
    /// or `r ≤ J-1`, as a matrix in the diagram basis.
    pub fn qj_projector(&self, j: usize) -> Result<OperatorMatrix, ThetaError> {
        assert!(j >= 1, "J must be positive");
        let basis: Vec<Diagram> = truncated_basis(self.level);
        let index: BTreeMap<&Diagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
        let columns: Result<Vec<Vec<Scalar>>, ThetaError> = basis
            .par_iter()
            .map(|d| {
                let mut coords = self.coords(&GradedElement::basis(d.clone()))?;
                coords.retain(|l, _| Subspace::Z.contains(l, j - 1));
                let img = self.reconstruct(&coords);
                let mut col = vec![Scalar::zero(); basis.len()];
                for (e, c) in img.terms() {
                    col[index[e]] = c.clone();
                }
                Ok(col)
            })
            .collect();
        Ok(OperatorMatrix {
            cutoff: self.level,
            exact_input_grade: Some(self.level),
            entries: ScalarMatrix::from_columns(basis.len(), columns?),
            basis,
        })
    }
}

/// `q^{-(l+r)} ∪^{•l} ∙ v ∙ ∪^{•r}`.
pub fn padded(v: &GradedElement, l: usize, r: usize) -> GradedElement {
    cup_power(l as i64).bullet(v).bullet(&cup_power(r as i64)).scale(&Scalar::q_pow(-((l + r) as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cup() -> GradedElement {
        GradedElement::basis(Diagram::cup())
    }

    #[test]
    fn coordinates_of_simple_elements() {
        let basis = ThetaBasis::new(4);
        let x = cup_power(2).scale(&Scalar::delta_pow(-1));
        let c = basis.coords(&x).unwrap();
        assert_eq!(c, ThetaCoords::from([(ThetaLabel::Cup { k: 2 }, Scalar::one())]));

        let v = basis.vbasis(2).vectors[0].clone();
        let c = basis.coords(&v).unwrap();
        assert_eq!(c, ThetaCoords::from([(ThetaLabel::Middle { l: 0, m: 2, i: 0, r: 0 }, Scalar::one())]));

        let y = cup().multiply(&cup());
        let c = basis.coords(&y).unwrap();
        assert_eq!(basis.reconstruct(&c), y);
        assert!(c.keys().all(|l| !l.is_middle()));
    }

    #[test]
    fn reconstruction_is_exact_on_diagrams() {
        let basis = ThetaBasis::new(4);
        for d in truncated_basis::<Diagram>(4) {
            let x = GradedElement::basis(d);
            assert_eq!(basis.reconstruct(&basis.coords(&x).unwrap()), x);
        }
    }

    #[test]
    fn support_above_level_is_rejected() {
        let basis = ThetaBasis::new(2);
        assert!(matches!(basis.coords(&cup_power(3)), Err(ThetaError::SupportExceedsLevel { grade: 3, level: 2 })));
    }

    #[test]
    fn membership_examples() {
        let basis = ThetaBasis::new(4);
        let v = basis.vbasis(2).vectors[0].clone();
        let right = v.bullet(&cup_power(2));
        assert!(basis.membership(&right, Subspace::Z, 0).unwrap());
        let both = cup().bullet(&v).bullet(&cup());
        assert!(!basis.membership(&both, Subspace::Z, 0).unwrap());
        assert!(basis.membership(&both, Subspace::Y, 1).unwrap());
        assert!(!basis.membership(&cup(), Subspace::Y, 10).unwrap());
    }
}
