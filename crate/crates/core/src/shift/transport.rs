//! Trace transport: `tr(∪^m)` computed with the stitch product against
//! `⟨T̃^m e_0, e_0⟩` for the measured cup block `T̃`.

use serde::Serialize;
use serde_json::json;

use crate::cup::cup_power;
use crate::graded::GradedElement;
use crate::linalg::ScalarMatrix;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::tl::Side;

/// `q^{-k} ∪^{•k}`, the unit-norm cup labels.
fn cup_label(k: usize) -> GradedElement {
    cup_power(k as i64).scale(&Scalar::q_pow(-(k as i32)))
}

/// Matrix of `π(∪)` on the cup labels `0..=n`, measured column by column for
/// inputs `k < n`. Returns `None` if some image leaves the span of cup labels.
pub fn measured_cup_block(n: usize) -> Option<ScalarMatrix> {
    let cup = cup_power(1);
    let mut m = ScalarMatrix::zeros(n + 1, n + 1);
    for k in 0..n {
        let img = cup.multiply(&cup_label(k));
        let mut residual = img.clone();
        for j in 0..=img.max_grade().unwrap_or(0) {
            // ⟨x, ∪^{•j}⟩ = cap_left^j(x)
            let mut y = img.part(j);
            for _ in 0..j {
                y = y.cap(Side::Left);
            }
            let c = y.trace().mul(&Scalar::q_pow(-(j as i32)));
            if !c.is_zero() {
                residual = residual.sub(&cup_label(j).scale(&c));
                m.set(j, k, c);
            }
        }
        if !residual.is_zero() {
            return None;
        }
    }
    Some(m)
}

#[derive(Debug, Clone, Serialize)]
pub struct TransportData {
    pub diagrammatic: Scalar,
    pub transported: Scalar,
    pub in_z_delta: bool,
}

/// `tr(∪^m)` against `⟨T̃^m e_0, e_0⟩` with `T̃` measured on labels `< n`.
pub fn moment_crosscheck(m: usize, n: usize) -> Report {
    assert!(n > m, "need N > m");
    let cup = cup_power(1);
    let mut power = GradedElement::one();
    for _ in 0..m {
        power = cup.multiply(&power);
    }
    let diagrammatic = power.trace();
    let params = json!({ "m": m, "n": n });
    let Some(block) = measured_cup_block(n) else {
        return Report::new("moment-crosscheck", params, false, json!({ "error": "cup image left the cup span" }));
    };
    let mut v: Vec<Scalar> = (0..=n).map(|i| if i == 0 { Scalar::one() } else { Scalar::zero() }).collect();
    for _ in 0..m {
        v = (0..=n)
            .map(|i| (0..=n).fold(Scalar::zero(), |acc, j| acc.add(&block.get(i, j).mul(&v[j]))))
            .collect();
    }
    let transported = v[0].clone();
    let in_z_delta = |s: &Scalar| s.is_laurent() && s.is_even_in_q() && s.numer().low() >= 0;
    let ok = in_z_delta(&diagrammatic) && in_z_delta(&transported);
    let data = TransportData { diagrammatic: diagrammatic.clone(), transported: transported.clone(), in_z_delta: ok };
    let pass = diagrammatic == transported && ok;
    Report::new("moment-crosscheck", params, pass, data)
}
