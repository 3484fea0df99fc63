//! The `gjs-cup` command line: expression evaluation and the verification
//! subcommands, each emitting one report.

pub mod expr;
pub mod output;

use std::env;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::aop::{self, bullet_closure_check, expansion_check, NamedVector};
use crate::cup::action::{check_cup_action_with, check_qj_projector, theta_orthogonality};
use crate::cup::cache::{cached_theta_basis, load_vbases};
use crate::cup::theta::{ThetaBasis, VmBasis};
use crate::cup::vn::{cap_matrix, dimension_identity, family_gram, is_cap_killed, vn_dimension};
use crate::graded::gram_matrix;
use crate::linalg::ldl_pivots;
use crate::report::Report;
use crate::shift;
use crate::tl::{catalan, enumerate_diagrams, Diagram};

pub use expr::{parse, EvalError, Expr, ParseError};
pub use output::{evaluate_scalars, render, Format};

pub const DEFAULT_CACHE_DIR: &str = ".gjs-cache";
pub const CACHE_ENV: &str = "GJS_CACHE_DIR";
/// Largest `m` that `eval` will build a `V_m` basis for.
pub const MAX_EVAL_VECTOR_GRADE: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "gjs-cup", version, about = "Exact checks for the cup subalgebra of the Temperley-Lieb planar algebra")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Evaluate reported scalars at this rational value of q.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q0: Option<String>,
    /// Cap on the grades a subcommand works in.
    #[arg(long, global = true)]
    pub max_grade: Option<usize>,
    /// Level of the labeled basis.
    #[arg(long, global = true)]
    pub level: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Tolerance for the floating-point quadrature cross-check.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub quad_tol: f64,
    /// Where V_n bases are cached (overrides $GJS_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Catalan numbers and dim V_n.
    Dims {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// LDL pivots of the Gram matrix of P_n at q0 (default 2).
    Gram {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Compute (or load) and cache an orthogonal basis of V_n.
    Vn {
        #[arg(long)]
        n: usize,
    },
    /// Cup action, orthogonality and Q_J in the labeled basis.
    ThetaCheck,
    /// tr(∪^m) against the transported shift moments.
    Moments {
        #[arg(long, default_value_t = 8)]
        max_m: usize,
    },
    /// Orthonormality of P_i, the Jacobi recursion, quadrature and the shift identities.
    Chebyshev {
        #[arg(long, default_value_t = 12)]
        max_i: usize,
    },
    /// Grid minima of R_I.
    LemmaRi {
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [4u64, 10, 100])]
        bounds: Vec<u64>,
        #[arg(long, default_value_t = 500)]
        max_i: usize,
    },
    /// Product expansion of cup-padded V elements; without arguments, the full family.
    AopExpansion {
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// `m,i` for v[m,i]
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        w: Option<String>,
    },
    /// <zb, bz> over the exhaustive family.
    AopOrth,
    /// The norm inequality chain on seeded random vectors.
    Certificate {
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long = "index", default_value_t = 7)]
        big_i: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Evaluate an expression such as "cup * cup".
    Eval { expr: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// `--cache-dir`, then `$GJS_CACHE_DIR`, then `./.gjs-cache`.
pub fn cache_dir(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_path_buf)
        .or_else(|| env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

fn parse_q0(s: &str) -> Result<BigRational, CliError> {
    let q = BigRational::from_str(s.trim()).map_err(|_| CliError::Usage(format!("--q0: '{s}' is not a rational number")))?;
    if !q.is_positive() {
        return Err(CliError::Usage("--q0 must be positive".into()));
    }
    Ok(q)
}

fn parse_vref(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected 'm,i', got '{s}'"));
    let (m, i) = s.split_once(',').ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, i.trim().parse().map_err(|_| bad())?))
}

fn cap(value: usize, max_grade: Option<usize>) -> usize {
    max_grade.map_or(value, |g| value.min(g))
}

fn dims(max_n: usize) -> Report {
    let rows: Vec<_> = (0..=max_n)
        .map(|n| {
            let counted = enumerate_diagrams(n).len() as u64;
            // exact kernel rank of the stacked caps where it is cheap
            let (dim_v, source) = match n {
                0 => (None, "none"),
                1..=5 => (Some(counted - cap_matrix(n).rank() as u64), "kernel"),
                _ => (Some(vn_dimension(n)), "formula"),
            };
            let identity = dimension_identity(n);
            json!({
                "n": n,
                "catalan": counted,
                "catalan_matches": counted == catalan(n),
                "dim_v": dim_v,
                "dim_v_source": source,
                "dim_v_matches": dim_v.is_none_or(|d| d == vn_dimension(n)),
                "identity_holds": identity.holds,
            })
        })
        .collect();
    let pass = rows.iter().all(|r| r["catalan_matches"] == true && r["dim_v_matches"] == true && r["identity_holds"] == true);
    Report::new("dims", json!({ "max_n": max_n }), pass, json!({ "rows": rows }))
}

fn gram(max_n: usize, q0: &BigRational) -> Result<Report, CliError> {
    let rows: Result<Vec<_>, CliError> = (0..=max_n)
        .map(|n| {
            let g = gram_matrix::<Diagram>(n).eval(q0).map_err(failed)?;
            let pivots = ldl_pivots(&g);
            let positive = pivots.as_ref().is_some_and(|p| p.iter().all(Signed::is_positive));
            let min = pivots.as_ref().and_then(|p| p.iter().min().map(|x| x.to_string()));
            Ok(json!({ "n": n, "size": g.len(), "positive_definite": positive, "min_pivot": min }))
        })
        .collect();
    let rows = rows?;
    let pass = rows.iter().all(|r| r["positive_definite"] == true);
    Ok(Report::new("gram", json!({ "max_n": max_n, "q0": q0.to_string() }), pass, json!({ "rows": rows })))
}

fn vn(n: usize, dir: &Path) -> Result<Report, CliError> {
    let bases = load_vbases(dir, n).map_err(failed)?;
    let b: &VmBasis = &bases[n];
    let expected = if n >= 2 { vn_dimension(n) as usize } else { 0 };
    let killed = b.vectors.par_iter().all(is_cap_killed);
    let g = family_gram(&b.vectors);
    let orthogonal = (0..g.rows()).all(|i| (0..g.cols()).all(|j| i == j || g.get(i, j).is_zero()));
    let pass = b.vectors.len() == expected && killed && orthogonal;
    let data = json!({
        "dimension": b.vectors.len(),
        "expected_dimension": expected,
        "cap_killed": killed,
        "orthogonal": orthogonal,
        "cache": crate::cup::cache::cache_path(dir).display().to_string(),
        "norms": b.norms,
        "vectors": b.vectors,
    });
    Ok(Report::new("vn", json!({ "n": n }), pass, data))
}

fn theta_check(level: usize, dir: &Path) -> Result<Report, CliError> {
    if level < 2 {
        return Err(CliError::Usage("--level must be at least 2".into()));
    }
    let basis = cached_theta_basis(dir, level).map_err(failed)?;
    let action = check_cup_action_with(&basis).map_err(failed)?;
    let orth = theta_orthogonality(&basis);
    let projectors: Result<Vec<Report>, CliError> =
        (1..=2.min(level / 2)).map(|j| check_qj_projector(&basis, j).map_err(failed)).collect();
    let projectors = projectors?;
    let pass = action.pass && orth.pass && projectors.iter().all(|r| r.pass);
    let data = json!({
        "measured_qe0_coefficient": action.data["measured_qe0_coefficient"],
        "cup_action": action,
        "orthogonality": orth,
        "projectors": projectors,
    });
    Ok(Report::new("theta-check", json!({ "level": level }), pass, data))
}

fn moments(max_m: usize) -> Report {
    let rows: Vec<_> = (1..=max_m)
        .into_par_iter()
        .map(|m| {
            let r = shift::moment_crosscheck(m, m + 1);
            json!({
                "m": m,
                "pass": r.pass,
                "diagrammatic": r.data["diagrammatic"],
                "transported": r.data["transported"],
                "in_z_delta": r.data["in_z_delta"],
                "semicircle_moment": shift::semicircle_moment(m).to_string(),
            })
        })
        .collect();
    let pass = rows.iter().all(|r| r["pass"] == true);
    Report::new("moments", json!({ "max_m": max_m }), pass, json!({ "rows": rows }))
}

fn chebyshev(max_i: usize, quad_tol: f64) -> Result<Report, CliError> {
    let orth = shift::orthonormality_check(max_i);
    let psi = shift::check_psi_intertwining(max_i + 2).map_err(failed)?;
    let quad = shift::quadrature_crosscheck(max_i, quad_tol);
    let vi: Result<Vec<Report>, CliError> = (0..=5).map(|i| shift::vi_identity_check(i, 16).map_err(failed)).collect();
    let tele: Result<Vec<Report>, CliError> = (1..=4).map(|k| shift::telescoping_check(k, 10).map_err(failed)).collect();
    let (vi, tele) = (vi?, tele?);
    let pass = orth.pass && psi.pass && quad.pass && vi.iter().chain(&tele).all(|r| r.pass);
    let data = json!({
        "orthonormality": orth,
        "recursion": psi,
        "quadrature": quad,
        "vi_identity": vi,
        "telescoping": tele,
    });
    Ok(Report::new("chebyshev", json!({ "max_i": max_i, "quad_tol": quad_tol }), pass, data))
}

fn aop_expansion(
    (i, j, k, r): (Option<usize>, Option<usize>, Option<usize>, Option<usize>),
    v: Option<&str>,
    w: Option<&str>,
    level: Option<usize>,
) -> Result<Report, CliError> {
    let theta = level.map(ThetaBasis::new);
    if let (Some(i), Some(j), Some(k), Some(r), Some(v), Some(w)) = (i, j, k, r, v, w) {
        let (vm, vi) = parse_vref(v)?;
        let (wm, wi) = parse_vref(w)?;
        let v = NamedVector::basis(vm, vi).map_err(|e| CliError::Usage(e.to_string()))?;
        let w = NamedVector::basis(wm, wi).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(expansion_check(i, j, k, r, &v, &w, theta.as_ref()).map_err(failed)?.to_report());
    }
    if [i, j, k, r].iter().any(Option::is_some) || v.is_some() || w.is_some() {
        return Err(CliError::Usage("give all of --i --j --k --r --v --w, or none for the full family".into()));
    }
    let (report, _) = expansion_family(theta.as_ref()).map_err(failed)?;
    Ok(report)
}

/// Closure for `n ≤ 3` and the expansion for `i, j ∈ {1, 2}`, `k, r ∈ {0, 1}`
/// over the `V_2` and `V_3` bases.
pub fn expansion_family(theta: Option<&ThetaBasis>) -> Result<(Report, Vec<aop::ExpansionReport>), aop::AopError> {
    let vectors = NamedVector::all([2, 3]);
    let pairs: Vec<(&NamedVector, &NamedVector)> = vectors.iter().flat_map(|v| vectors.iter().map(move |w| (v, w))).collect();
    let closure: Result<Vec<bool>, aop::AopError> = pairs
        .par_iter()
        .flat_map(|(v, w)| (0..=3).into_par_iter().map(move |n| bullet_closure_check(&v.element, n, &w.element)))
        .collect();
    let closure = closure?;
    let mut tuples = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            for k in 0..=1 {
                for r in 0..=1 {
                    for &(v, w) in &pairs {
                        tuples.push((i, j, k, r, v, w));
                    }
                }
            }
        }
    }
    let expansions: Result<Vec<aop::ExpansionReport>, aop::AopError> =
        tuples.par_iter().map(|&(i, j, k, r, v, w)| expansion_check(i, j, k, r, v, w, theta)).collect();
    let expansions = expansions?;
    let closure_ok = closure.iter().all(|&b| b);
    let endpoints_ok = expansions.iter().all(|e| e.endpoints_ok());
    let span_ok = expansions.iter().filter(|e| e.within_hypothesis).all(|e| e.template_match);
    let outside: Vec<String> = expansions
        .iter()
        .filter(|e| !e.within_hypothesis && !e.span_ok)
        .map(|e| format!("i={} j={} k={} r={} {} {}: off-span grades {:?}", e.i, e.j, e.k, e.r, e.v, e.w, e.off_span_grades))
        .collect();
    let rows: Vec<_> = expansions
        .iter()
        .map(|e| {
            json!({
                "key": e.golden_key(),
                "v": e.v,
                "w": e.w,
                "within_hypothesis": e.within_hypothesis,
                "endpoints_ok": e.endpoints_ok(),
                "span_ok": e.span_ok,
                "coefficients": e.coefficient_list(),
            })
        })
        .collect();
    let data = json!({
        "closure_cases": closure.len(),
        "closure_ok": closure_ok,
        "expansion_cases": expansions.len(),
        "endpoints_ok": endpoints_ok,
        "span_ok_within_hypothesis": span_ok,
        "outside_hypothesis_off_span": outside,
        "rows": rows,
    });
    let report = Report::new("aop-expansion", json!({ "family": "i,j in {1,2}; k,r in {0,1}; V_2 and V_3" }), closure_ok && endpoints_ok && span_ok, data);
    Ok((report, expansions))
}

fn eval(text: &str, dir: &Path, max_grade: Option<usize>) -> Result<Report, CliError> {
    let e = parse(text).map_err(|e| CliError::Usage(e.to_string()))?;
    // reject bad references before building any basis
    for (m, i) in e.vector_refs() {
        if m > MAX_EVAL_VECTOR_GRADE {
            return Err(CliError::Usage(format!("v[{m},{i}]: grades above {MAX_EVAL_VECTOR_GRADE} are not supported")));
        }
        if m < 2 || i as u64 >= vn_dimension(m) {
            return Err(CliError::Usage(format!("unknown basis vector v[{m},{i}]")));
        }
    }
    let bases: Vec<Arc<VmBasis>> = match e.max_vector_grade() {
        Some(m) => load_vbases(dir, m).map_err(failed)?,
        None => Vec::new(),
    };
    let lookup = |m: usize, i: usize| bases.get(m).and_then(|b| b.vectors.get(i).cloned());
    let mut value = e.eval(&lookup).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Some(g) = max_grade {
        value = value.truncate(g);
    }
    let data = json!({ "expression": e.to_string(), "text": value.to_string(), "element": value });
    Ok(Report::new("eval", json!({ "expr": text, "max_grade": max_grade }), true, data))
}

/// Run one subcommand and produce its report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let dir = cache_dir(g.cache_dir.as_deref());
    let q0 = g.q0.as_deref().map(parse_q0).transpose()?;
    if g.quad_tol.is_nan() || g.quad_tol <= 0.0 {
        return Err(CliError::Usage("--quad-tol must be positive".into()));
    }
    let mut report = match &cli.command {
        Command::Dims { max_n } => dims(cap(*max_n, g.max_grade)),
        Command::Gram { max_n } => {
            let at = q0.clone().unwrap_or_else(|| BigRational::from_integer(2.into()));
            gram(cap(*max_n, g.max_grade), &at)?
        }
        Command::Vn { n } => {
            if g.max_grade.is_some_and(|m| *n > m) {
                return Err(CliError::Usage(format!("n = {n} exceeds --max-grade")));
            }
            vn(*n, &dir)?
        }
        Command::ThetaCheck => theta_check(cap(g.level.unwrap_or(5), g.max_grade), &dir)?,
        Command::Moments { max_m } => moments(*max_m),
        Command::Chebyshev { max_i } => chebyshev(*max_i, g.quad_tol)?,
        Command::LemmaRi { grid, bounds, max_i } => {
            if *grid < 2 {
                return Err(CliError::Usage("--grid needs at least 2 points".into()));
            }
            shift::lemma_ri(*grid, bounds, *max_i)
        }
        Command::AopExpansion { i, j, k, r, v, w } => {
            aop_expansion((*i, *j, *k, *r), v.as_deref(), w.as_deref(), g.level.map(|l| cap(l, g.max_grade)))?
        }
        Command::AopOrth => aop::orthogonality_family().map_err(failed)?,
        Command::Certificate { n, big_i, count, grid } => {
            if *big_i + 1 >= *n || *grid < 2 {
                return Err(CliError::Usage("need --index + 1 < --n and --grid >= 2".into()));
            }
            aop::random_certificates(*n, *big_i, *grid, g.seed, *count).map_err(failed)?
        }
        Command::Eval { expr } => eval(expr, &dir, g.max_grade)?,
    };
    if let Some(q0) = &q0 {
        evaluate_scalars(&mut report.data, q0);
        if let serde_json::Value::Object(p) = &mut report.params {
            p.insert("q0".into(), json!(q0.to_string()));
        }
    }
    Ok(report)
}

/// Parse arguments, run, write the report to `out`; returns the exit code
/// (0 pass, 1 failed check, 2 usage error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(render(&report, cli.global.format).as_bytes());
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
