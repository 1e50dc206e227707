//! `verify-duality`: the `gl_k` KZB form against the elliptic Casimir form
//! plus the closed abelian form, coefficient by coefficient.

use clap::Parser;
use ecl_core::connection::duality::duality_residual;
use ecl_core::elliptic::{ThetaEngine, DEFAULT_TRUNCATION};
use ecl_core::{Error, Result};
use serde::Serialize;
use serde_json::json;

use super::ddca::{suite_checks, suite_config};
use super::flatness::default_point;
use crate::parse;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Highest ad-power compared.
    #[arg(long, default_value_t = 2)]
    pub ad_order: usize,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 2)]
    pub x_degree: usize,
    #[arg(long, default_value = "0.3+1.1i", allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, default_value = "stated")]
    pub reading: String,
    /// Comma-separated point of C^n.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Tolerance on the curl of the abelian form.
    #[arg(long, default_value_t = 1e-6)]
    pub curl_tol: f64,
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let tau = parse::tau(&args.tau)?;
    super::positive("curl-tol", args.curl_tol)?;
    let cfg = suite_config(
        args.k,
        args.n,
        args.degree,
        args.x_degree,
        true,
        &args.reading,
        args.ad_order,
    )?;
    let point = match &args.point {
        Some(p) => parse::point(p)?,
        None if args.n <= 4 => default_point(args.n),
        None => return Err(Error::Domain("--point is required for n > 4".into())),
    };
    let e = ThetaEngine::new(tau, DEFAULT_TRUNCATION)?;
    let d = duality_residual(&point, &e, &cfg)?;
    let mut report = Report::new(
        "verify-duality",
        "gl_k KZB connection coincides with the elliptic Casimir connection plus the closed abelian form",
        config,
    );
    report.truncation = json!({
        "ad_order": args.ad_order,
        "m_degree": args.degree,
        "x_degree": args.x_degree,
        "q_truncation": DEFAULT_TRUNCATION,
        "reading": cfg.reading.label(),
    });
    report.checks = suite_checks(&d.du);
    for entry in &d.entries {
        report.checks.extend(suite_checks(&entry.checks));
    }
    report.push(Check::asserted(
        "abelian form is closed",
        d.abelian_curl < args.curl_tol,
        json!({ "max_curl": d.abelian_curl }),
    ));
    let coefficients: Vec<_> = d
        .entries
        .iter()
        .map(|en| {
            json!({
                "root": [en.root.0 + 1, en.root.1 + 1],
                "power": en.power,
                "kernel_coefficient": parse::c_json(en.kernel_coefficient),
            })
        })
        .collect();
    report.data = json!({
        "k": args.k,
        "n": args.n,
        "point": point.iter().map(|&z| parse::c_json(z)).collect::<Vec<_>>(),
        "kernel_coefficients": coefficients,
    });
    Ok(report.finish())
}
