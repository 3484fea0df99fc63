//! Enumerate Temperley-Lieb diagrams and exercise stitch and cap.

use gjs_cup::tl::{catalan, enumerate_diagrams, Side};
use gjs_cup::Diagram;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 0..=6 {
        println!("|P_{n}| = {:>3}  (Catalan {})", enumerate_diagrams(n).len(), catalan(n));
    }

    println!("\nP_2 in canonical order:");
    for d in enumerate_diagrams(2) {
        println!("  {}  pairs {:?}", d.canonical_string(), d.pairs());
    }

    let x = Diagram::from_parens("(())")?;
    let y = Diagram::from_parens("()()")?;
    println!("\nstitching {x} with {y}:");
    for j in 0..=4 {
        let (loops, d) = x.stitch(&y, j)?;
        println!("  j = {j}: {d}  loops {loops}");
    }

    let (loops, capped) = y.cap(Side::Right)?;
    println!("\ncap on the right of {y}: {capped} with {loops} loop(s)");
    Ok(())
}
