//! The Pythagoras inequality chain on near-commuting unit vectors of the
//! truncated double shift space, exactly and in floating point.

use gjs_cup::aop::random_certificates;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = random_certificates(16, 7, 10_000, 2024, 5)?;
    println!("pass: {}", report.pass);
    println!("{}", serde_json::to_string_pretty(&report.data)?);
    Ok(())
}
