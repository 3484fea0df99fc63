//! The graded algebra: stitch-sum products, bullets, traces and the
//! expression language used by `gjs-cup eval`.

use gjs_cup::cli::parse;
use gjs_cup::cup::cup_power;
use gjs_cup::GradedElement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cup = cup_power(1);
    let sq = cup.multiply(&cup);
    println!("cup * cup       = {sq}");
    println!("cup . cup       = {}", cup.bullet(&cup));
    println!("tr(cup * cup)   = {}", sq.trace());
    println!("||cup . cup||^2 = {}", cup.bullet(&cup).norm_squared());
    println!("(cup * cup)*    = {}", sq.adjoint());

    for text in ["q^-1 (cup + 1)", "delta cup . cup - cup^2", "(cup + 1) * (cup - 1)"] {
        let e = parse(text)?;
        let value = e.eval(&|_, _| None::<GradedElement>)?;
        println!("\n{text}\n  parsed as {e}\n  = {value}");
    }

    match parse("q^-1 (cup + 1") {
        Err(e) => println!("\n{e}"),
        Ok(e) => println!("\nunexpectedly parsed {e}"),
    }
    Ok(())
}
