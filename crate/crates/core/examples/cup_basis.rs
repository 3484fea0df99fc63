//! The cap-killed spaces V_n, the labelled basis built from cup padding,
//! and the action of the cup on it.

use gjs_cup::cup::action::{check_cup_action_with, theta_orthogonality};
use gjs_cup::cup::theta::ThetaBasis;
use gjs_cup::cup::vn::{compute_vn, dimension_identity, is_cap_killed, vn_dimension};
use gjs_cup::Scalar;

fn show(v: &serde_json::Value) -> String {
    serde_json::from_value::<Scalar>(v.clone()).map_or_else(|_| v.to_string(), |s| s.to_string())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=5 {
        let basis = compute_vn(n);
        let killed = basis.iter().all(is_cap_killed);
        println!("V_{n}: dim {} (formula {}), cap-killed {killed}", basis.len(), vn_dimension(n));
    }
    for n in 0..=6 {
        let id = dimension_identity(n);
        println!("dimension identity n = {n}: {}", if id.holds { "holds" } else { "FAILS" });
    }

    let theta = ThetaBasis::new(5);
    println!("\nlevel 5 basis: {} labels", theta.labels().len());
    println!("orthogonality: pass = {}", theta_orthogonality(&theta).pass);

    let action = check_cup_action_with(&theta)?;
    println!("cup action matches prediction: {}", action.pass);
    println!("measured q_e0 coefficient: {}", show(&action.data["measured_qe0_coefficient"]));
    for e in action.data["cup_block"].as_array().into_iter().flatten() {
        println!("  cup block row {}: sub {} diag {} sup {}", e["k"], show(&e["sub"]), show(&e["diag"]), show(&e["sup"]));
    }
    Ok(())
}
