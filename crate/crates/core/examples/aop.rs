//! Products of cup-padded V vectors and the orthogonality of zb and bz.

use gjs_cup::aop::{bullet_closure_check, expansion_check, orthogonality_check, pad, NamedVector};
use gjs_cup::cup::cup_power;
use gjs_cup::cup::theta::ThetaBasis;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = NamedVector::basis(2, 0)?;
    let w = NamedVector::basis(3, 0)?;
    for n in 0..=3 {
        println!("{} . cup^{n} . {} in V: {}", v.id, w.id, bullet_closure_check(&v.element, n, &w.element)?);
    }

    let e = expansion_check(1, 2, 1, 1, &v, &w, None)?;
    println!("\n(cup^1 v cup^2)(cup^1 w cup^1):");
    for t in &e.terms {
        println!("  n = {}: {}", t.n, t.coeff);
    }
    println!("  endpoints ok: {}, stays in the span: {}", e.endpoints_ok(), e.span_ok);

    let theta = ThetaBasis::truncated(7, 3);
    let z = pad(&v.element, 2, 2);
    let b = cup_power(1).bullet(&w.element);
    println!("\n<zb, bz> = {}", orthogonality_check(&z, &b, 2, &theta)?);
    Ok(())
}
