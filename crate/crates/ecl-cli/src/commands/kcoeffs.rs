//! `k-coeffs`: coefficients of `k(z, x|τ) = θ(z+x)/(θ(z)θ(x)) − 1/x` in `x`.

use clap::Parser;
use ecl_core::elliptic::{rel_err, trig_k_series, ThetaEngine, XSeries};
use ecl_core::Result;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::positive;
use crate::parse;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    #[arg(long, default_value = "0.3+1.1i", allow_hyphen_values = true)]
    pub tau: String,
    /// Evaluation points (repeatable).
    #[arg(long, num_args = 1.., default_values = ["0.23+0.17i", "-0.31+0.42i", "0.11-0.05i"], allow_hyphen_values = true)]
    pub z: Vec<String>,
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    #[arg(long, default_value_t = 40)]
    pub trunc: usize,
    /// Tolerance for the constant-term and symmetry checks.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Modular parameter of the trigonometric comparison.
    #[arg(long, default_value = "20i", allow_hyphen_values = true)]
    pub trig_tau: String,
    #[arg(long, default_value_t = 1e-7)]
    pub trig_tol: f64,
}

/// Largest `|a_j − b_j| / max(1, |b_j|)`.
fn coeff_dist(a: &XSeries, b: &XSeries) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm() / y.norm().max(1.0)))
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let tau = parse::tau(&args.tau)?;
    let trig_tau = parse::tau(&args.trig_tau)?;
    let zs: Vec<Complex64> = args.z.iter().map(|z| parse::complex(z)).collect::<Result<_>>()?;
    positive("tol", args.tol)?;
    positive("trig-tol", args.trig_tol)?;
    let e = ThetaEngine::new(tau, args.trunc)?;
    let et = ThetaEngine::new(trig_tau, args.trunc)?;
    let mut report = Report::new(
        "k-coeffs",
        "kernel k(z,x|τ) = θ(z+x)/(θ(z)θ(x)) − 1/x: constant term θ'/θ, k(z,x) = −k(−z,−x), trigonometric degeneration",
        config,
    );
    report.truncation = json!({ "q_truncation": args.trunc, "x_order": args.order });
    let (mut c0, mut sym, mut trig) = (0.0f64, 0.0f64, 0.0f64);
    let mut per_point = Vec::new();
    for &z in &zs {
        let k = e.k_series(z, args.order)?;
        let km = e.k_series(-z, args.order)?;
        c0 = c0.max(rel_err(k.coeff(0), e.theta_logderiv(z)?));
        let flipped = XSeries::from_coeffs(
            km.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 0 { -c } else { *c })
                .collect(),
        );
        sym = sym.max(coeff_dist(&k, &flipped));
        let d = coeff_dist(&et.k_series(z, args.order)?, &trig_k_series(z, args.order)?);
        trig = trig.max(d);
        per_point.push(json!({
            "z": parse::c_json(z),
            "k": k.coeffs().iter().map(|&c| parse::c_json(c)).collect::<Vec<_>>(),
            "g": e.g_series(z, args.order)?.coeffs().iter().map(|&c| parse::c_json(c)).collect::<Vec<_>>(),
            "trig_distance": d,
        }));
    }
    report.push(Check::asserted(
        "constant coefficient equals theta'/theta",
        c0 < args.tol,
        json!({ "max_relative_error": c0 }),
    ));
    report.push(Check::asserted(
        "k(z,x) = -k(-z,-x) coefficient-wise",
        sym < args.tol,
        json!({ "max_error": sym }),
    ));
    report.push(Check::asserted(
        "trigonometric degeneration at large Im tau",
        trig < args.trig_tol,
        json!({ "max_error": trig, "tau": parse::c_json(trig_tau) }),
    ));
    report.data = json!({ "tau": parse::c_json(tau), "points": per_point });
    Ok(report.finish())
}
