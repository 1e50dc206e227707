//! `flatness`: the algebraic flatness relations on a model representation,
//! plus a numerical curvature check when all of `t`, `x`, `y` are present.

use clap::Parser;
use ecl_core::connection::{
    adjoint_kappa_rep, build_small_rep_cherednik, cherednik_finite_rep, curvature_residual, flatness_relations_check,
    ConnRep, Kernel, RelationToggles, DEFAULT_AD_ORDER,
};
use ecl_core::elliptic::{ThetaEngine, DEFAULT_TRUNCATION};
use ecl_core::glpoly::Q;
use ecl_core::rootsys::RootSystem;
use ecl_core::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::positive;
use crate::parse;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    /// cherednik-sl3, cherednik-sl4 (zero weight space of the small
    /// representation), cherednik-finite-sl3, cherednik-finite-sl4 (finite
    /// quotient L_c(triv)), adjoint-sl3 (negative control).
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value = "0.3+1.1i", allow_hyphen_values = true)]
    pub tau: String,
    /// Cherednik parameter c (default 1/3 for the small representation,
    /// r/n with the smallest admissible r for the finite quotient).
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long, default_value = "1")]
    pub hbar: String,
    /// Comma-separated point for the curvature check.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[arg(long, default_value_t = DEFAULT_AD_ORDER)]
    pub ad_order: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub fd_step: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub curvature_tol: f64,
}

/// A generic point of `C^n` away from every divisor.
pub fn default_point(n: usize) -> Vec<Complex64> {
    let base = [
        Complex64::new(0.05, 0.02),
        Complex64::new(0.4, 0.3),
        Complex64::new(-0.2, 0.6),
        Complex64::new(0.27, -0.33),
    ];
    base[..n].to_vec()
}

/// A model by name: its root system, representation and description.
pub fn build_model(name: &str, c: Option<&str>, hbar: &str) -> Result<(RootSystem, ConnRep, String)> {
    let (kind, n) = match name {
        "cherednik-sl3" => ("small", 3),
        "cherednik-sl4" => ("small", 4),
        "cherednik-finite-sl3" => ("finite", 3),
        "cherednik-finite-sl4" => ("finite", 4),
        "adjoint-sl3" => ("adjoint", 3),
        _ => return Err(Error::Domain(format!("unknown model '{name}'"))),
    };
    let rs = RootSystem::from_label("A", n - 1)?;
    match kind {
        "small" => {
            let c = parse::scalar(c.unwrap_or("1/3"))?;
            let h = parse::scalar(hbar)?;
            let rep = build_small_rep_cherednik(&rs, h, c)?;
            let desc = format!("zero weight space of the small representation of sl_{n}, c = {c}, hbar = {h}");
            Ok((rs, rep, desc))
        }
        "finite" => {
            let default = format!("{}/{}", n - 1, n);
            let c: Q = parse::rational(c.unwrap_or(&default))?;
            let h: Q = parse::rational(hbar)?;
            let rep = cherednik_finite_rep(n, h.clone(), c.clone())?;
            let desc = format!(
                "finite quotient L_c(triv) of the rational Cherednik algebra of S_{n}, c = {c}, hbar = {h}, dimension {}",
                rep.dim()
            );
            Ok((rs, rep.to_conn_rep(), desc))
        }
        _ => {
            let rep = adjoint_kappa_rep(&rs)?;
            Ok((
                rs,
                rep,
                format!("adjoint representation of gl_{n} with t = kappa and x = y = 0"),
            ))
        }
    }
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let tau = parse::tau(&args.tau)?;
    positive("fd-step", args.fd_step)?;
    positive("curvature-tol", args.curvature_tol)?;
    let (rs, rep, desc) = build_model(&args.model, args.c.as_deref(), &args.hbar)?;
    let point = match &args.point {
        Some(p) => parse::point(p)?,
        None => default_point(rs.ambient_dim()),
    };
    if point.len() != rs.ambient_dim() {
        return Err(Error::Domain(format!("--point needs {} coordinates", rs.ambient_dim())));
    }
    let flat = flatness_relations_check(&rep, &rs, RelationToggles::ALL)?;
    let mut report = Report::new(
        "flatness",
        "universal KZB connection is flat and W-equivariant: relations among t_α, x(u), y(u) in the representation",
        config,
    );
    report.truncation = json!({ "ad_order": args.ad_order, "q_truncation": DEFAULT_TRUNCATION });
    for r in &flat.relations {
        let details = json!({
            "instances": r.instances,
            "max_residual": r.max_residual,
            "skipped": r.skipped,
            "offender": r.offender,
        });
        match &r.skipped {
            None => report.push(Check::asserted(r.name.clone(), r.passed(), details)),
            Some(why) => report.push(Check::probe(format!("{} — skipped: {why}", r.name), false, details)),
        }
    }
    let skipped = flat.skipped();
    report.push(Check::probe(
        "every relation family checked",
        skipped.is_empty(),
        json!({ "skipped": skipped }),
    ));
    let mut curvature = None;
    if rep.x.is_some() && rep.y.is_some() {
        let e = ThetaEngine::new(tau, DEFAULT_TRUNCATION)?;
        let r = curvature_residual(&rep, &rs, &point, Kernel::Elliptic(&e), args.ad_order, args.fd_step)?;
        curvature = Some(r);
        report.push(Check::asserted(
            "numerical curvature vanishes at the point",
            r < args.curvature_tol,
            json!({ "relative_curvature": r, "fd_step": args.fd_step }),
        ));
    }
    report.data = json!({
        "model": args.model,
        "description": desc,
        "dim": rep.dim,
        "positive_roots": rs.positive_roots().len(),
        "has_x": rep.x.is_some(),
        "has_y": rep.y.is_some(),
        "has_weyl": rep.weyl.is_some(),
        "point": point.iter().map(|&z| parse::c_json(z)).collect::<Vec<_>>(),
        "relative_curvature": curvature,
    });
    Ok(report.finish())
}
