//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the table is always printed. Every
//! criterion runs even if an earlier one fails; the process exits nonzero if
//! any line is FAIL.

use std::collections::BTreeMap;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gjs_cup::aop::{orthogonality_family, random_certificates};
use gjs_cup::cli::expansion_family;
use gjs_cup::cup::action::{check_cup_action_with, measure_cup_action, theta_orthogonality, Action};
use gjs_cup::cup::cup_power;
use gjs_cup::cup::theta::{ThetaBasis, ThetaCoords, ThetaLabel};
use gjs_cup::cup::vn::{cap_matrix, compute_vn, dimension_identity_with};
use gjs_cup::graded::gram_matrix;
use gjs_cup::linalg::ldl_pivots;
use gjs_cup::shift::{
    check_psi_intertwining, chebyshev, lemma_ri, moment_crosscheck, orthonormality_check, quadrature_crosscheck,
    telescoping_check, vi_identity_check, IntPoly,
};
use gjs_cup::tl::enumerate_diagrams;
use gjs_cup::{Diagram, GradedElement, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Wall-clock budget for enumerating `P_n`, `n ≤ 8`.
const CATALAN_BUDGET: Duration = Duration::from_secs(5);
/// Quadrature against exact semicircle inner products.
const QUAD_TOL: f64 = 1e-9;
/// Slack on every floating-point certificate line.
const CERT_FLOAT_TOL: f64 = 1e-12;
/// Largest admissible commutator defect for the certificate vectors.
const CERT_MAX_DEFECT: f64 = 0.25;
const SEED: u64 = 2024;
const RANDOM_CASES: usize = 60;

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

/// Compare with the frozen value, writing it on first run.
fn golden(name: &str, value: &Value) -> Result<&'static str, String> {
    let path = golden_path(name);
    match fs::read_to_string(&path) {
        Ok(text) => {
            let frozen: Value = serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
            ensure(&frozen == value, || format!("{name} differs from frozen value"))?;
            Ok("matches golden")
        }
        Err(_) => {
            fs::create_dir_all(path.parent().expect("golden dir")).map_err(|e| e.to_string())?;
            fs::write(&path, serde_json::to_string_pretty(value).expect("json") + "\n").map_err(|e| e.to_string())?;
            Ok("golden written")
        }
    }
}

fn catalan_oracle(n: usize) -> u64 {
    let mut c = vec![1u64; n + 1];
    for k in 1..=n {
        c[k] = (0..k).map(|i| c[i] * c[k - 1 - i]).sum();
    }
    c[n]
}

fn random_element(rng: &mut ChaCha8Rng) -> GradedElement {
    let pool: Vec<Diagram> = (0..=2).flat_map(enumerate_diagrams).collect();
    let mut x = GradedElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let d = pool[rng.gen_range(0..pool.len())].clone();
        let c = Scalar::from_int(rng.gen_range(-3i64..=3)).mul(&Scalar::q_pow(rng.gen_range(-2..=2)));
        x.add_term(d, c);
    }
    x
}

fn c1_catalan() -> Outcome {
    let start = Instant::now();
    let counts: Vec<usize> = (0..=8).map(|n| enumerate_diagrams(n).len()).collect();
    let elapsed = start.elapsed();
    for (n, &c) in counts.iter().enumerate() {
        ensure(c as u64 == catalan_oracle(n), || format!("|P_{n}| = {c}, Catalan {}", catalan_oracle(n)))?;
    }
    ensure(elapsed < CATALAN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("|P_n| for n=0..8 = {counts:?} in {:.2?}", elapsed))
}

fn c2_gram() -> Outcome {
    let q0 = BigRational::from_integer(BigInt::from(2));
    let mut mins = Vec::new();
    for n in 0..=5 {
        let g = gram_matrix::<Diagram>(n).eval(&q0).map_err(|e| e.to_string())?;
        let pivots = ldl_pivots(&g).ok_or_else(|| format!("LDL breaks down at n = {n}"))?;
        ensure(pivots.iter().all(Signed::is_positive), || format!("nonpositive pivot at n = {n}"))?;
        mins.push(pivots.iter().min().expect("pivots").to_string());
    }
    Ok(format!("all pivots > 0 at q0 = 2; min pivot per n: {}", mins.join(", ")))
}

fn c3_algebra_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let one = GradedElement::one();
    for case in 0..RANDOM_CASES {
        let (a, b, c) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        let ab = a.multiply(&b);
        ensure(ab.multiply(&c) == a.multiply(&b.multiply(&c)), || format!("associativity, case {case}"))?;
        ensure(one.multiply(&a) == a && a.multiply(&one) == a, || format!("unit, case {case}"))?;
        ensure(ab.trace() == b.multiply(&a).trace(), || format!("trace cyclicity, case {case}"))?;
        ensure(ab.adjoint() == b.adjoint().multiply(&a.adjoint()), || format!("(ab)* = b*a*, case {case}"))?;
    }
    Ok(format!("{RANDOM_CASES} seeded cases per law, exact"))
}

fn c4_bullet() -> Outcome {
    let mut checked = 0;
    for n in 0..=3 {
        let pn = enumerate_diagrams(n);
        for m in 0..=3 {
            let pm = enumerate_diagrams(m);
            for a in &pn {
                for b in &pm {
                    let (ea, eb) = (GradedElement::basis(a.clone()), GradedElement::basis(b.clone()));
                    let ab = ea.bullet(&eb);
                    ensure(ab.norm_squared() == ea.norm_squared().mul(&eb.norm_squared()), || format!("norm of {a} . {b}"))?;
                    for c in &pn {
                        for d in &pm {
                            let (ec, ed) = (GradedElement::basis(c.clone()), GradedElement::basis(d.clone()));
                            let lhs = ab.inner(&ec.bullet(&ed));
                            ensure(lhs == ea.inner(&ec).mul(&eb.inner(&ed)), || format!("<{a}.{b}, {c}.{d}>"))?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} basis quadruples, exact"))
}

fn c5_vn_theta() -> Outcome {
    let mut dims = BTreeMap::new();
    for n in 1..=5 {
        let d = enumerate_diagrams(n).len() - cap_matrix(n).rank();
        dims.insert(n, d as u64);
    }
    let low: Vec<u64> = (1..=4).map(|n| dims[&n]).collect();
    ensure(low == [0, 1, 2, 6], || format!("dim V_1..4 = {low:?}"))?;
    dims.insert(6, compute_vn(6).len() as u64);
    for n in 0..=6 {
        let id = dimension_identity_with(n, |m| if m == 0 { 1 } else { dims[&m] });
        ensure(id.holds && id.catalan == catalan_oracle(n), || format!("dimension identity at n = {n}: {id:?}"))?;
    }
    let orth = theta_orthogonality(&ThetaBasis::new(5));
    ensure(orth.pass, || format!("theta orthogonality: {}", orth.data["witnesses"]))?;
    Ok(format!(
        "dim V_1..4 = {low:?} by kernel rank; identity n <= 6; {} label pairs orthogonal",
        orth.data["pairs_checked"]
    ))
}

fn expected_column(label: &ThetaLabel, action: Action) -> ThetaCoords {
    let q = Scalar::q_pow(1);
    let mut out = ThetaCoords::new();
    let mut put = |l: ThetaLabel, c: Scalar| {
        out.insert(l, c);
    };
    match *label {
        ThetaLabel::Cup { k } => {
            put(ThetaLabel::Cup { k: k + 1 }, q.clone());
            put(ThetaLabel::Cup { k }, Scalar::one());
            put(ThetaLabel::Cup { k: k - 1 }, q);
        }
        ThetaLabel::Middle { l, m, i, r } => {
            let (s, at): (usize, Box<dyn Fn(usize) -> ThetaLabel>) = match action {
                Action::Left => (l, Box::new(move |s| ThetaLabel::Middle { l: s, m, i, r })),
                Action::Right => (r, Box::new(move |s| ThetaLabel::Middle { l, m, i, r: s })),
            };
            put(at(s + 1), q.clone());
            put(at(s), Scalar::one());
            if s > 0 {
                put(at(s - 1), q);
            }
        }
    }
    out
}

fn c6_cup_action() -> Outcome {
    let basis = ThetaBasis::new(6);
    let mut checked = 0;
    for action in [Action::Left, Action::Right] {
        let op = measure_cup_action(&basis, action).map_err(|e| e.to_string())?;
        for (label, col) in &op {
            ensure(col.keys().all(|t| t.is_middle() == label.is_middle()), || format!("{action:?} {label:?} mixes summands"))?;
            if matches!(label, ThetaLabel::Cup { k: 0 }) {
                continue;
            }
            ensure(col == &expected_column(label, action), || format!("{action:?} column {label:?}: {col:?}"))?;
            checked += 1;
        }
    }
    let report = check_cup_action_with(&basis).map_err(|e| e.to_string())?;
    ensure(report.pass, || format!("cup action report: {}", report.data["witnesses"]))?;
    let coeff: Scalar = serde_json::from_value(report.data["measured_qe0_coefficient"].clone()).map_err(|e| e.to_string())?;
    let status = golden("cup-qe0.json", &json!({ "level": 6, "measured_qe0_coefficient": coeff, "text": coeff.to_string() }))?;
    Ok(format!("level 6, {checked} interior columns exact; q_e0 coefficient {coeff} ({status})"))
}

fn c7_chebyshev() -> Outcome {
    let orth = orthonormality_check(12);
    ensure(orth.pass, || format!("orthonormality: {}", orth.data["failures"]))?;
    let quad = quadrature_crosscheck(12, QUAD_TOL);
    ensure(quad.pass, || format!("quadrature error {}", quad.data["max_abs_error"]))?;
    for i in 0..=12 {
        let lhs = chebyshev(i).mul(&IntPoly::x());
        let rhs = if i == 0 { chebyshev(1) } else { chebyshev(i + 1).add(&chebyshev(i - 1)) };
        ensure(lhs == rhs, || format!("X P_{i} != P_{} + P_{}", i + 1, i.saturating_sub(1)))?;
    }
    let psi = check_psi_intertwining(14).map_err(|e| e.to_string())?;
    ensure(psi.pass, || "recursion against truncated shift".into())?;
    Ok(format!("i, j <= 12 exact; quadrature max error {} <= {QUAD_TOL:e}", quad.data["max_abs_error"]))
}

fn c8_lemma() -> Outcome {
    let r = lemma_ri(10_000, &[4, 10, 100], 500);
    ensure(r.data["grid_min_nondecreasing"] == true, || "grid minimum decreased".into())?;
    let hits: Vec<String> = r.data["hits"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|h| format!("I*({}) = {}", h["bound"], h["i_star"]))
        .collect();
    ensure(r.pass, || format!("bounds not all reached within 500: {hits:?}"))?;
    Ok(hits.join(", "))
}

fn c9_shift_identities() -> Outcome {
    for i in 0..=5 {
        let r = vi_identity_check(i, 16).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("vi identity at i = {i}"))?;
    }
    for k in 1..=4 {
        let r = telescoping_check(k, 10).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("telescoping at k = {k}"))?;
    }
    Ok("q_e0 P_i(T) = v_i and P_i(T) e0 = e_i for i <= 5 at N = 16; telescoping k <= 4 at N = 10".into())
}

/// Weighted paths `0 -> 0` of length `m` on `ℕ`: up/down steps weigh `q`,
/// flat steps weigh 1 except at height 0 where they are forbidden. Returns
/// coefficients of `q^0, q^1, …`.
fn path_oracle(m: usize) -> Vec<i64> {
    // table[h] = polynomial in q (dense)
    let mut table: Vec<Vec<i64>> = vec![vec![0; m + 1]; m + 2];
    table[0][0] = 1;
    for _ in 0..m {
        let mut next = vec![vec![0; m + 1]; m + 2];
        for h in 0..=m {
            for (e, &c) in table[h].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if h > 0 {
                    next[h][e] += c;
                    next[h - 1][e + 1] += c;
                }
                if e < m {
                    next[h + 1][e + 1] += c;
                }
            }
        }
        table = next;
    }
    table[0].clone()
}

fn c10_moments() -> Outcome {
    let mut shown = Vec::new();
    for m in 1..=8 {
        let r = moment_crosscheck(m, m + 1);
        ensure(r.pass, || format!("moment {m}: {}", r.data))?;
        let tr: Scalar = serde_json::from_value(r.data["diagrammatic"].clone()).map_err(|e| e.to_string())?;
        let want = path_oracle(m)
            .iter()
            .enumerate()
            .fold(Scalar::zero(), |acc, (e, &c)| acc.add(&Scalar::from_int(c).mul(&Scalar::q_pow(e as i32))));
        ensure(tr == want, || format!("tr(cup^{m}) = {tr}, path count {want}"))?;
        let direct = (0..m).fold(GradedElement::one(), |acc, _| cup_power(1).multiply(&acc)).trace();
        ensure(direct == tr, || format!("tr(cup^{m}) recomputed as {direct}"))?;
        shown.push(tr.to_string());
    }
    Ok(format!("m = 1..8 exact in Z[delta]: {}", shown.join("; ")))
}

fn c11_aop() -> Outcome {
    let (report, expansions) = expansion_family(None).map_err(|e| e.to_string())?;
    ensure(report.data["closure_ok"] == true, || "v . cup^n . w left V".into())?;
    ensure(report.data["endpoints_ok"] == true, || "endpoint coefficient mismatch".into())?;
    ensure(report.data["span_ok_within_hypothesis"] == true, || "expansion left the span for j != k".into())?;
    let mut coeffs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for e in &expansions {
        let list: Vec<String> = e.coefficient_list().iter().map(Scalar::to_string).collect();
        let prev = coeffs.insert(e.golden_key(), list.clone());
        ensure(prev.as_ref().is_none_or(|p| p == &list), || format!("coefficients depend on the vectors at {}", e.golden_key()))?;
    }
    let status = golden("expansion-coeffs.json", &serde_json::to_value(&coeffs).expect("json"))?;
    let orth = orthogonality_family().map_err(|e| e.to_string())?;
    ensure(orth.pass && orth.data["all_zero"] == true, || "<zb, bz> nonzero".into())?;
    Ok(format!(
        "{} closure cases, {} expansions ({status}), {} orthogonality cases all zero",
        report.data["closure_cases"], report.data["expansion_cases"], orth.data["cases"]
    ))
}

fn c12_certificate() -> Outcome {
    let r = random_certificates(16, 7, 10_000, SEED, 20).map_err(|e| e.to_string())?;
    let vectors = r.data["vectors"].as_array().cloned().unwrap_or_default();
    ensure(vectors.len() == 20, || format!("{} vectors", vectors.len()))?;
    let mut lines = 0;
    for v in &vectors {
        let defect = v["max_defect"].as_f64().unwrap_or(f64::INFINITY);
        ensure(defect <= CERT_MAX_DEFECT, || format!("seed {}: defect {defect}", v["seed"]))?;
        for l in v["lines"].as_array().into_iter().flatten() {
            ensure(l["holds"] == true && l["float_holds"] == true, || format!("seed {} line {}", v["seed"], l["name"]))?;
            lines += 1;
        }
    }
    ensure(r.pass, || "certificate report failed".into())?;
    Ok(format!("20 vectors, {lines} lines true exactly and within {CERT_FLOAT_TOL:e} in f64"))
}

fn c13_cli_determinism() -> Outcome {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = cache.path().to_str().expect("utf-8 path").to_string();
    let cases: Vec<Vec<&str>> = vec![
        vec!["eval", "q^-1 (cup + 1) * cup . cup"],
        vec!["eval", "v[3,1] . cup - 2 v[2,0] . cup^2"],
        vec!["--format", "csv", "dims"],
        vec!["gram"],
        vec!["vn", "--n", "4"],
        vec!["theta-check", "--level", "4"],
        vec!["--q0", "3/2", "moments"],
        vec!["--format", "text", "chebyshev"],
        vec!["lemma-ri", "--grid", "2000"],
        vec!["aop-expansion"],
        vec!["aop-orth"],
        vec!["certificate", "--count", "3"],
    ];
    for args in &cases {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_gjs-cup"))
                .args(["--cache-dir", &cache, "--seed", "7"])
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success() && b.status.success(), || format!("{args:?} exited {:?}", a.status.code()))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{args:?} output differs between runs"))?;
    }
    Ok(format!("{} invocations byte-identical across two runs", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "basis counts", c1_catalan),
        (2, "gram positivity", c2_gram),
        (3, "algebra laws", c3_algebra_laws),
        (4, "bullet multiplicativity", c4_bullet),
        (5, "V_n and labelled basis", c5_vn_theta),
        (6, "cup action structure", c6_cup_action),
        (7, "chebyshev and measure", c7_chebyshev),
        (8, "R_I growth", c8_lemma),
        (9, "shift identities", c9_shift_identities),
        (10, "trace transport", c10_moments),
        (11, "aop identities", c11_aop),
        (12, "pythagoras certificate", c12_certificate),
        (13, "cli determinism", c13_cli_determinism),
    ];
    let mut failed = Vec::new();
    for (id, name, f) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name} [{t:.1?}]: {detail}"),
            Err(reason) => {
                println!("FAIL {id:>2} {name} [{t:.1?}]: {reason}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: 13/13 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
