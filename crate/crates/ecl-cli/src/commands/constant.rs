//! `constant-c`: the sum-pair constant `C̃` by three independent routes.

use clap::Parser;
use ecl_core::constants::constant_report;
use ecl_core::rootsys::{Family, Rat, RootSystem};
use ecl_core::Result;
use serde::Serialize;
use serde_json::json;

use super::{family_and_rank, rat_str};
use crate::report::{Check, Report, Table};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    #[arg(long = "type")]
    pub family: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let (family, rank) = family_and_rank(&args.family, args.rank)?;
    let rs = RootSystem::build(family, rank)?;
    let c = constant_report(&rs)?;
    let mut report = Report::new(
        "constant-c",
        "constant C̃ = Σ over pairs with α+β a root, normalised by rank(rank−1): general formula, classified sum, bracket route",
        config,
    );
    let general = c.tilde_c[0].1;
    let values: Vec<_> = c
        .tilde_c
        .iter()
        .map(|(m, v)| json!({ "method": m.label(), "value": rat_str(v) }))
        .collect();
    report.push(Check::asserted(
        "three methods agree exactly",
        c.agree,
        json!({ "values": values }),
    ));
    if family == Family::A {
        let n = rank as i64 + 1;
        report.push(Check::asserted(
            "tildeC = 6n for type A_{n-1}",
            c.tilde_c.iter().all(|(_, v)| *v == Rat::from_integer(6 * n)),
            json!({ "n": n, "expected": 6 * n }),
        ));
    }
    let classes: Vec<_> = c
        .classes
        .iter()
        .map(|row| {
            let (a, b, s) = row.class;
            json!({
                "len2": [rat_str(&a), rat_str(&b), rat_str(&s)],
                "count": row.count,
                "weight": rat_str(&row.weight),
            })
        })
        .collect();
    report.data = json!({
        "family": family.label(),
        "rank": rank,
        "tildeC": rat_str(&general),
        "C_over_lambda2": rat_str(&c.c_over_lambda2),
        "methods": values,
        "classes": classes,
    });
    report.tables.push(Table {
        title: "methods".into(),
        header: vec!["method".into(), "tildeC".into()],
        rows: c
            .tilde_c
            .iter()
            .map(|(m, v)| vec![m.label().into(), rat_str(v)])
            .collect(),
    });
    report.tables.push(Table {
        title: "classes".into(),
        header: vec![
            "len2_alpha".into(),
            "len2_beta".into(),
            "len2_sum".into(),
            "count".into(),
            "weight".into(),
        ],
        rows: c
            .classes
            .iter()
            .map(|row| {
                let (a, b, s) = row.class;
                vec![
                    rat_str(&a),
                    rat_str(&b),
                    rat_str(&s),
                    row.count.to_string(),
                    rat_str(&row.weight),
                ]
            })
            .collect(),
    });
    Ok(report.finish())
}
