//! Traces of cup powers computed diagrammatically and transported through
//! the measured cup block.

use gjs_cup::shift::{moment_crosscheck, semicircle_moment};
use gjs_cup::Scalar;

fn show(v: &serde_json::Value) -> String {
    serde_json::from_value::<Scalar>(v.clone()).map_or_else(|_| v.to_string(), |s| s.to_string())
}

fn main() {
    for m in 1..=8 {
        let r = moment_crosscheck(m, m + 1);
        println!(
            "m = {m}: tr(cup^m) = {}  transported = {}  semicircle moment {}  {}",
            show(&r.data["diagrammatic"]),
            show(&r.data["transported"]),
            semicircle_moment(m),
            if r.pass { "ok" } else { "MISMATCH" }
        );
    }
}
