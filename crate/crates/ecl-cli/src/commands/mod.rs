//! One module per subcommand.

pub mod constant;
pub mod ddca;
pub mod duality;
pub mod flatness;
pub mod kcoeffs;
pub mod monodromy;
pub mod roots;
pub mod theta;

use ecl_core::rootsys::{Family, Rat};
use ecl_core::{Error, Result};
use serde::Serialize;

use crate::report::Report;
use crate::{Cli, Command};

/// Runs a parsed command line.
pub fn dispatch(cli: &Cli) -> Result<Report> {
    let mut config = echo(&cli.command);
    if let Some(obj) = config.as_object_mut() {
        obj.insert("emit".into(), echo(&cli.emit));
    }
    match &cli.command {
        Command::Roots(a) => roots::run(a, config),
        Command::ThetaCheck(a) => theta::run(a, config),
        Command::KCoeffs(a) => kcoeffs::run(a, config),
        Command::VerifyDdca(a) => ddca::run(a, config),
        Command::ConstantC(a) => constant::run(a, config),
        Command::Flatness(a) => flatness::run(a, config),
        Command::VerifyDuality(a) => duality::run(a, config),
        Command::Monodromy(a) => monodromy::run(a, config),
    }
}

fn echo<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("arguments serialize")
}

/// Resolves a family label and an optional rank.
pub fn family_and_rank(label: &str, rank: Option<usize>) -> Result<(Family, usize)> {
    let family = Family::parse(label)?;
    match (family.fixed_rank(), rank) {
        (Some(r), None) => Ok((family, r)),
        (Some(r), Some(given)) if given == r => Ok((family, r)),
        (Some(r), Some(given)) => Err(Error::Domain(format!("{} has rank {r}, not {given}", family.label()))),
        (None, Some(given)) => Ok((family, given)),
        (None, None) => Err(Error::Domain(format!("--rank is required for type {}", family.label()))),
    }
}

/// `p/q` (or `p`) for a root-system rational.
pub fn rat_str(r: &Rat) -> String {
    format!("{r}")
}

/// Requires a finite positive value.
pub fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Domain(format!("--{name} must be positive, got {v}")))
    }
}
