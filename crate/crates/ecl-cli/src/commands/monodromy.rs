//! `monodromy`: parallel transport along paths read from a JSON file.
//!
//! Path file format:
//!
//! ```json
//! {
//!   "tau": "0.3+1.1i",
//!   "paths": [
//!     { "name": "loop", "segments": [
//!         { "arc": { "center": ["0"], "direction": ["1"], "radius": 0.2 } } ] },
//!     { "name": "side", "tau": "0.3+1.1i", "segments": [
//!         { "line": { "from": ["0.23+0.17i"], "to": ["1.23+0.17i"] } } ] }
//!   ],
//!   "checks": [
//!     { "kind": "expect", "path": "side", "matrix": [["-1"]], "tol": 1e-8 },
//!     { "kind": "equal", "a": "p", "b": "q", "tol": 1e-6 },
//!     { "kind": "inverse", "a": "p", "b": "p-reversed", "tol": 1e-8 }
//!   ]
//! }
//! ```
//!
//! Every segment lists its endpoints (or centre, direction and radius)
//! explicitly; `τ` is set per file and may be overridden per path.  Arcs
//! default to a full positive turn starting at angle 0.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use clap::Parser;
use ecl_core::connection::{max_abs, CMat, DEFAULT_AD_ORDER};
use ecl_core::monodromy::{transport_all, FormEvaluator, KzbForm, Path, ScalarLogDerivForm, Segment, TransportOptions};
use ecl_core::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::flatness::build_model;
use super::positive;
use crate::parse;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    /// scalar (c·θ'/θ dz on C), cherednik-sl3, cherednik-finite-sl3,
    /// cherednik-sl4, cherednik-finite-sl4, adjoint-sl3.
    #[arg(long)]
    pub model: String,
    /// JSON path file.
    #[arg(long)]
    pub path: std::path::PathBuf,
    /// Local error tolerance per unit parameter length.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Model parameter c (scalar exponent or Cherednik parameter).
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long, default_value = "1")]
    pub hbar: String,
    #[arg(long, default_value_t = DEFAULT_AD_ORDER)]
    pub ad_order: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub tau: String,
    pub paths: Vec<PathSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub name: String,
    #[serde(default)]
    pub tau: Option<String>,
    pub segments: Vec<SegmentSpec>,
}

fn full_turn() -> f64 {
    2.0 * PI
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SegmentSpec {
    Line {
        from: Vec<String>,
        to: Vec<String>,
    },
    Arc {
        center: Vec<String>,
        direction: Vec<String>,
        radius: f64,
        #[serde(default)]
        start: f64,
        #[serde(default = "full_turn")]
        sweep: f64,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CheckSpec {
    /// The transport along `path` equals `matrix`.
    Expect {
        path: String,
        matrix: Vec<Vec<String>>,
        tol: f64,
    },
    /// The transports along `a` and `b` agree.
    Equal { a: String, b: String, tol: f64 },
    /// The transports along `a` and `b` are mutually inverse.
    Inverse { a: String, b: String, tol: f64 },
}

fn vector(v: &[String]) -> Result<Vec<Complex64>> {
    v.iter().map(|s| parse::complex(s)).collect()
}

fn segment(s: &SegmentSpec) -> Result<Segment> {
    Ok(match s {
        SegmentSpec::Line { from, to } => Segment::Line {
            from: vector(from)?,
            to: vector(to)?,
        },
        SegmentSpec::Arc {
            center,
            direction,
            radius,
            start,
            sweep,
        } => Segment::Arc {
            center: vector(center)?,
            direction: vector(direction)?,
            radius: *radius,
            start: *start,
            sweep: *sweep,
        },
    })
}

/// Parses and validates a path file.
pub fn load_paths(text: &str) -> Result<(Vec<String>, Vec<Path>, Vec<CheckSpec>)> {
    let file: PathFile = serde_json::from_str(text).map_err(|e| Error::Domain(format!("invalid path file: {e}")))?;
    let tau = parse::tau(&file.tau)?;
    let mut names = Vec::new();
    let mut paths = Vec::new();
    for p in &file.paths {
        if names.contains(&p.name) {
            return Err(Error::Domain(format!("duplicate path name '{}'", p.name)));
        }
        let t = match &p.tau {
            Some(s) => parse::tau(s)?,
            None => tau,
        };
        let segs = p.segments.iter().map(segment).collect::<Result<Vec<_>>>()?;
        paths.push(Path::new(t, segs).map_err(|e| Error::Domain(format!("path '{}': {e}", p.name)))?);
        names.push(p.name.clone());
    }
    if paths.is_empty() {
        return Err(Error::Domain("path file lists no paths".into()));
    }
    Ok((names, paths, file.checks))
}

fn matrix_json(m: &CMat) -> serde_json::Value {
    let rows: Vec<Vec<serde_json::Value>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| parse::c_json(m[(i, j)])).collect())
        .collect();
    json!(rows)
}

fn form_for(args: &Args) -> Result<Box<dyn FormEvaluator>> {
    if args.model == "scalar" {
        let c = parse::scalar(args.c.as_deref().unwrap_or("1/3"))?;
        return Ok(Box::new(ScalarLogDerivForm::new(c)));
    }
    let (rs, rep, _) = build_model(&args.model, args.c.as_deref(), &args.hbar)?;
    Ok(Box::new(KzbForm::new(rep, rs, args.ad_order)?))
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    positive("tol", args.tol)?;
    let text = std::fs::read_to_string(&args.path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", args.path.display())))?;
    let (names, paths, specs) = load_paths(&text)?;
    let form = form_for(args)?;
    let opts = TransportOptions::with_tol(args.tol);
    let results = transport_all(form.as_ref(), &paths, &opts)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let by_name: BTreeMap<&str, &CMat> = names
        .iter()
        .map(String::as_str)
        .zip(results.iter().map(|r| &r.matrix))
        .collect();
    let lookup = |n: &str| -> Result<&CMat> {
        by_name
            .get(n)
            .copied()
            .ok_or_else(|| Error::Domain(format!("check refers to unknown path '{n}'")))
    };

    let mut report = Report::new(
        "monodromy",
        "parallel transport F' = A(γ)γ'·F of the connection d − A along piecewise smooth paths",
        config,
    );
    report.truncation = json!({
        "tol": args.tol,
        "min_step": opts.min_step,
        "min_clearance": opts.min_clearance,
        "clearance_samples": opts.clearance_samples,
        "ad_order": args.ad_order,
    });
    let d = form.dim();
    for spec in &specs {
        let (name, err, tol) = match spec {
            CheckSpec::Expect { path, matrix, tol } => {
                let f = lookup(path)?;
                if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
                    return Err(Error::Domain(format!("expected matrix for '{path}' must be {d}×{d}")));
                }
                let mut m = CMat::zeros(d, d);
                for (i, row) in matrix.iter().enumerate() {
                    for (j, s) in row.iter().enumerate() {
                        m[(i, j)] = parse::complex(s)?;
                    }
                }
                (
                    format!("transport along '{path}' equals the expected matrix"),
                    max_abs(&(f - m)),
                    *tol,
                )
            }
            CheckSpec::Equal { a, b, tol } => (
                format!("transports along '{a}' and '{b}' agree"),
                max_abs(&(lookup(a)? - lookup(b)?)),
                *tol,
            ),
            CheckSpec::Inverse { a, b, tol } => (
                format!("transports along '{a}' and '{b}' are inverse"),
                max_abs(&(lookup(a)? * lookup(b)? - CMat::identity(d, d))),
                *tol,
            ),
        };
        positive("tol (path file check)", tol)?;
        report.push(Check::asserted(
            name,
            err < tol,
            json!({ "max_error": err, "tol": tol }),
        ));
    }
    let out: Vec<_> = names
        .iter()
        .zip(&paths)
        .zip(&results)
        .map(|((n, p), r)| {
            json!({
                "name": n,
                "tau": parse::c_json(p.tau),
                "segments": p.segments.len(),
                "path_hash": r.path_hash,
                "step_count": r.step_count,
                "rejected_steps": r.rejected_steps,
                "max_local_error": r.max_local_error,
                "matrix": matrix_json(&r.matrix),
            })
        })
        .collect();
    report.data = json!({ "model": args.model, "dim": d, "ambient": form.ambient(), "paths": out });
    Ok(report.finish())
}
