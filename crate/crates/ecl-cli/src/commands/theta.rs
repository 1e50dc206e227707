//! `theta-check`: the defining properties of `θ(z|τ)` at seeded random points.
//!
//! 1. zeros on the lattice: `θ(ω) = 0` for `ω ∈ {0, 1, τ, 1+τ}`;
//! 2. `θ'(0) = 1` (fourth-order central difference);
//! 3. `θ(z+1) = −θ(z) = θ(−z)`, `θ(z+τ) = −e^{−πiτ}e^{−2πiz}θ(z)`;
//! 4. `θ(z|τ+1) = θ(z|τ)`, `θ(−z/τ|−1/τ) = −(1/τ)e^{πiz²/τ}θ(z|τ)`;
//! 5. heat equation for `ϑ = η³θ` by central differences.

use std::f64::consts::PI;

use clap::Parser;
use ecl_core::elliptic::{heat_equation_residual, rel_err, ThetaEngine};
use ecl_core::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::positive;
use crate::parse;
use crate::report::{Check, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    /// Modular parameters (repeatable); points alternate between them.
    #[arg(long, num_args = 1.., default_values = ["0.3+1.1i", "-0.4+0.9i"], allow_hyphen_values = true)]
    pub tau: Vec<String>,
    /// Number of product factors.
    #[arg(long, default_value_t = 40)]
    pub trunc: usize,
    /// Number of random points.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance for properties (1)–(4).
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Finite-difference step for the heat equation.
    #[arg(long, default_value_t = 1e-4)]
    pub heat_h: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub heat_tol: f64,
}

/// `θ'(0)` by the fourth-order central stencil with step `h`.
fn derivative_at_zero(e: &ThetaEngine, h: f64) -> Complex64 {
    let f = |x: f64| e.theta(Complex64::new(x, 0.0));
    (f(h) * 8.0 - f(-h) * 8.0 - f(2.0 * h) + f(-2.0 * h)) / (12.0 * h)
}

/// A seeded point `a + bτ`, `a, b ∈ [−½, ½)`, kept away from the lattice.
fn sample_point(rng: &mut ChaCha8Rng, e: &ThetaEngine) -> Complex64 {
    loop {
        let a: f64 = rng.random_range(-0.5..0.5);
        let b: f64 = rng.random_range(-0.5..0.5);
        let z = Complex64::new(a, 0.0) + e.tau() * b;
        if e.nearest_lattice_point(z).1 > 0.05 {
            return z;
        }
    }
}

struct Worst {
    err: f64,
    at: Option<(Complex64, Complex64)>,
}

impl Worst {
    fn new() -> Worst {
        Worst { err: 0.0, at: None }
    }

    fn record(&mut self, err: f64, z: Complex64, tau: Complex64) {
        if !(err <= self.err) {
            self.err = err;
            self.at = Some((z, tau));
        }
    }

    fn json(&self) -> serde_json::Value {
        json!({
            "max_error": self.err,
            "worst_z": self.at.map(|(z, _)| parse::c_json(z)),
            "worst_tau": self.at.map(|(_, t)| parse::c_json(t)),
        })
    }
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let taus: Vec<Complex64> = args.tau.iter().map(|t| parse::tau(t)).collect::<Result<_>>()?;
    if taus.is_empty() {
        return Err(ecl_core::Error::Domain("at least one --tau is needed".into()));
    }
    positive("tol", args.tol)?;
    positive("heat-h", args.heat_h)?;
    positive("heat-tol", args.heat_tol)?;
    if args.points == 0 {
        return Err(Error::Domain("--points must be at least 1".into()));
    }
    let engines: Vec<ThetaEngine> = taus
        .iter()
        .map(|&t| ThetaEngine::new(t, args.trunc))
        .collect::<Result<_>>()?;
    let modular: Vec<(ThetaEngine, ThetaEngine)> = taus
        .iter()
        .map(|&t| {
            Ok((
                ThetaEngine::new(t + 1.0, args.trunc)?,
                ThetaEngine::new(-Complex64::new(1.0, 0.0) / t, args.trunc)?,
            ))
        })
        .collect::<Result<_>>()?;

    let mut report = Report::new(
        "theta-check",
        "odd Jacobi theta function: zeros on the lattice, θ'(0) = 1, quasi-periodicity, modularity, heat equation",
        config,
    );
    report.truncation = json!({ "q_truncation": args.trunc, "points": args.points, "seed": args.seed });

    let mut zeros = Worst::new();
    let mut deriv = Worst::new();
    for e in &engines {
        let t = e.tau();
        for w in [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), t, t + 1.0] {
            zeros.record(e.theta(w).norm(), w, t);
        }
        deriv.record((derivative_at_zero(e, 1e-3) - 1.0).norm(), Complex64::new(0.0, 0.0), t);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut period1, mut odd, mut period_tau, mut shift, mut inversion, mut heat) = (
        Worst::new(),
        Worst::new(),
        Worst::new(),
        Worst::new(),
        Worst::new(),
        Worst::new(),
    );
    let i = Complex64::new(0.0, 1.0);
    for p in 0..args.points {
        let idx = p % engines.len();
        let (e, (e_shift, e_inv)) = (&engines[idx], &modular[idx]);
        let t = e.tau();
        let z = sample_point(&mut rng, e);
        let th = e.theta(z);
        period1.record(rel_err(e.theta(z + 1.0), -th), z, t);
        odd.record(rel_err(e.theta(-z), -th), z, t);
        let factor = -(-i * PI * t).exp() * (-i * 2.0 * PI * z).exp();
        period_tau.record(rel_err(e.theta(z + t), factor * th), z, t);
        shift.record(rel_err(e_shift.theta(z), th), z, t);
        let rhs = -(Complex64::new(1.0, 0.0) / t) * (i * PI * z * z / t).exp() * th;
        inversion.record(rel_err(e_inv.theta(-z / t), rhs), z, t);
        heat.record(heat_equation_residual(t, args.trunc, z, args.heat_h)?, z, t);
    }

    let tol = args.tol;
    report.push(Check::asserted(
        "(1) theta vanishes on the lattice points 0, 1, tau, 1+tau",
        zeros.err < tol,
        zeros.json(),
    ));
    report.push(Check::asserted("(2) theta'(0) = 1", deriv.err < tol, deriv.json()));
    report.push(Check::asserted(
        "(3) theta(z+1) = -theta(z)",
        period1.err < tol,
        period1.json(),
    ));
    report.push(Check::asserted("(3) theta(-z) = -theta(z)", odd.err < tol, odd.json()));
    report.push(Check::asserted(
        "(3) theta(z+tau) = -exp(-pi i tau) exp(-2 pi i z) theta(z)",
        period_tau.err < tol,
        period_tau.json(),
    ));
    report.push(Check::asserted(
        "(4) theta(z|tau+1) = theta(z|tau)",
        shift.err < tol,
        shift.json(),
    ));
    report.push(Check::asserted(
        "(4) theta(-z/tau|-1/tau) = -(1/tau) exp(pi i z^2/tau) theta(z|tau)",
        inversion.err < tol,
        inversion.json(),
    ));
    report.push(Check::asserted(
        "(5) heat equation for eta^3 theta",
        heat.err < args.heat_tol,
        heat.json(),
    ));
    report.data = json!({
        "taus": taus.iter().map(|&t| parse::c_json(t)).collect::<Vec<_>>(),
        "eta": engines.iter().map(|e| parse::c_json(e.eta())).collect::<Vec<_>>(),
    });
    Ok(report.finish())
}
