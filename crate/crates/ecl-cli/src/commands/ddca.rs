//! `verify-ddca`: exact operator identities of the type-A model on finite
//! families of test states.

use clap::Parser;
use ecl_core::glpoly::check::TestFamily;
use ecl_core::glpoly::{run_suite, Reading, Status, Suite, SuiteCheck, SuiteConfig};
use ecl_core::Result;
use serde::Serialize;
use serde_json::json;

use crate::report::{Check, CheckStatus, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Largest m-degree of the test states.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// Largest x-degree of the test states.
    #[arg(long, default_value_t = 2)]
    pub x_degree: usize,
    /// Leave out the (x_a − x_b)^{-1} factor from the test family.
    #[arg(long)]
    pub no_inverse: bool,
    /// dualpair, elliptic-generators, main-relation, zn, lemmaQv, aell, duality, sl2-probe.
    #[arg(long, default_value = "main-relation")]
    pub suite: String,
    /// Which form of each identity is asserted (the other is reported as a probe).
    #[arg(long, default_value = "stated")]
    pub reading: String,
    /// Highest ad-power for the duality suite.
    #[arg(long, default_value_t = 2)]
    pub ad_order: usize,
}

/// Converts suite checks into report checks.
pub fn suite_checks(checks: &[SuiteCheck]) -> Vec<Check> {
    checks
        .iter()
        .map(|c| {
            let r = &c.report;
            let status = match c.status {
                Status::Asserted => CheckStatus::Asserted,
                Status::Probe => CheckStatus::Probe,
            };
            Check {
                name: r.name.clone(),
                status,
                passed: r.passed(),
                details: json!({
                    "form": format!("{:?}", c.form).to_lowercase(),
                    "weight_filter": r.weight.label(),
                    "states_tested": r.states_tested,
                    "failures": r.failures,
                    "first_counterexample": r.counterexample.as_ref().map(|(s, res)| json!({
                        "state": s.to_string(),
                        "residual": res.to_string(),
                    })),
                }),
            }
        })
        .collect()
}

pub fn suite_config(
    k: usize,
    n: usize,
    degree: usize,
    x_degree: usize,
    inverse: bool,
    reading: &str,
    ad_order: usize,
) -> Result<SuiteConfig> {
    let mut cfg = SuiteConfig::new(k, n);
    cfg.family = TestFamily {
        m_degree: degree,
        x_degree,
        inverse_factor: inverse,
        homogeneous: false,
    };
    cfg.reading = Reading::parse(reading)?;
    cfg.ad_order = ad_order;
    Ok(cfg)
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let suite = Suite::parse(&args.suite)?;
    let cfg = suite_config(
        args.k,
        args.n,
        args.degree,
        args.x_degree,
        !args.no_inverse,
        &args.reading,
        args.ad_order,
    )?;
    let checks = run_suite(suite, &cfg)?;
    let mut report = Report::new("verify-ddca", suite.anchor(), config);
    report.truncation = json!({
        "m_degree": args.degree,
        "x_degree": args.x_degree,
        "inverse_factor": !args.no_inverse,
        "ad_order": args.ad_order,
        "reading": cfg.reading.label(),
    });
    report.checks = suite_checks(&checks);
    report.data = json!({ "suite": suite.label(), "k": args.k, "n": args.n });
    Ok(report.finish())
}
