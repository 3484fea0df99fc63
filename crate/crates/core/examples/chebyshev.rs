//! Chebyshev polynomials for the semicircle law, their shift-operator
//! identities, and the growth of R_I on a grid.

use gjs_cup::shift::{chebyshev, lemma_ri, orthonormality_check, quadrature_crosscheck, telescoping_check, vi_identity_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for i in 0..=5 {
        println!("P_{i} = {}", chebyshev(i));
    }
    println!("\northonormal up to 12: {}", orthonormality_check(12).pass);
    let quad = quadrature_crosscheck(12, 1e-9);
    println!("quadrature max error: {}", quad.data["max_abs_error"]);

    for i in 0..=5 {
        println!("q_e0 P_{i}(T) = v_{i} at N = 16: {}", vi_identity_check(i, 16)?.pass);
    }
    for k in 2..=4 {
        println!("telescoping k = {k} at N = 10: {}", telescoping_check(k, 10)?.pass);
    }

    let report = lemma_ri(2000, &[4, 10, 100], 500);
    for hit in report.data["hits"].as_array().into_iter().flatten() {
        println!("B = {:>3}: I* = {}  grid min ~ {}", hit["bound"], hit["i_star"], hit["grid_min_approx"]);
    }
    Ok(())
}
