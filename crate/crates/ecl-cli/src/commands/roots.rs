//! `roots`: the root system table.

use clap::Parser;
use ecl_core::rootsys::{Family, RootSystem};
use ecl_core::{Error, Result};
use serde::Serialize;
use serde_json::json;

use super::{family_and_rank, rat_str};
use crate::report::{Check, Report};

#[derive(Debug, Clone, Parser, Serialize)]
pub struct Args {
    /// Family label: A, B, C, D, E6, E7, E8, F4, G2.
    #[arg(long = "type")]
    pub family: String,
    /// Rank (implied for the exceptional families).
    #[arg(long)]
    pub rank: Option<usize>,
}

/// Number of roots by the classification formulas.
pub fn table_root_count(family: Family, r: usize) -> usize {
    match family {
        Family::A => r * (r + 1),
        Family::B | Family::C => 2 * r * r,
        Family::D => 2 * r * (r - 1),
        Family::E6 => 72,
        Family::E7 => 126,
        Family::E8 => 240,
        Family::F4 => 48,
        Family::G2 => 12,
    }
}

/// Dual Coxeter number by the classification table.
pub fn table_dual_coxeter(family: Family, r: usize) -> i64 {
    let r = r as i64;
    match family {
        Family::A => r + 1,
        Family::B => 2 * r - 1,
        Family::C => r + 1,
        Family::D => 2 * r - 2,
        Family::E6 => 12,
        Family::E7 => 18,
        Family::E8 => 30,
        Family::F4 => 9,
        Family::G2 => 4,
    }
}

pub fn run(args: &Args, config: serde_json::Value) -> Result<Report> {
    let (family, rank) = family_and_rank(&args.family, args.rank)?;
    let rs = RootSystem::build(family, rank)?;
    let mut report = Report::new(
        "roots",
        "finite reduced root system: reflection closure, Gram matrix and dual Coxeter number",
        config,
    );
    let roots = rs.roots();
    let closed = roots
        .iter()
        .all(|a| roots.iter().all(|b| rs.is_root(&rs.reflect_root(a, b))));
    report.push(Check::asserted(
        "closed under every reflection s_a",
        closed,
        json!({ "roots": roots.len() }),
    ));
    let expected = table_root_count(family, rank);
    report.push(Check::asserted(
        "root count matches the classification",
        roots.len() == expected,
        json!({ "found": roots.len(), "expected": expected }),
    ));
    report.push(Check::asserted(
        "positive roots are half of the roots",
        2 * rs.positive_roots().len() == roots.len(),
        json!({ "positive": rs.positive_roots().len() }),
    ));
    let hv = rs.dual_coxeter()?;
    let table = table_dual_coxeter(family, rank);
    report.push(Check::asserted(
        "dual Coxeter number matches the classification",
        hv == ecl_core::rootsys::Rat::from_integer(table),
        json!({ "computed": rat_str(&hv), "expected": table }),
    ));
    if rs.simple_roots().len() != rank {
        return Err(Error::Internal(format!(
            "{} simple roots for rank {rank}",
            rs.simple_roots().len()
        )));
    }
    let gram: Vec<Vec<String>> = rs.gram().iter().map(|r| r.iter().map(rat_str).collect()).collect();
    let classes: Vec<_> = rs
        .classify_sum_pairs()
        .into_iter()
        .map(|((a, b, s), count)| json!({ "len2": [rat_str(&a), rat_str(&b), rat_str(&s)], "count": count }))
        .collect();
    report.data = json!({
        "family": family.label(),
        "rank": rank,
        "ambient_dim": rs.ambient_dim(),
        "dual_coxeter": rat_str(&hv),
        "gram": gram,
        "simple_roots": rs.simple_roots().iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "positive_roots": rs.positive_roots().iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "roots": roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        "sum_pair_classes": classes,
    });
    Ok(report.finish())
}
