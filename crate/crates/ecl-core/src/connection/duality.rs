//! Comparison of the `gl_k` KZB form with the elliptic Casimir form plus the
//! closed abelian form
//! `𝒜 = Σ_{i<j} (θ'/θ)(z_i − z_j) a_ij dz_ij`.
//!
//! Both forms are series `Σ_p k_p(α(z)) · C_{α,p}` in the kernel
//! coefficients; the comparison is done coefficient by coefficient as exact
//! operator identities in the type-A model, and the scalar coefficients
//! `k_p(α(z))` are reported alongside.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::Kernel;
use crate::elliptic::ThetaEngine;
use crate::error::{Error, Result};
use crate::glpoly::suites::{duality_du_checks, duality_root_checks};
use crate::glpoly::{suite_passed, Model, SuiteCheck, SuiteConfig};

/// Coefficient comparison for one root and one `ad`-power.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityEntry {
    /// The root `ε_i − ε_j` as `(i, j)`, `i < j`.
    pub root: (usize, usize),
    pub power: usize,
    /// The scalar `k_p(z_i − z_j)` multiplying this coefficient in the form.
    pub kernel_coefficient: Complex64,
    pub checks: Vec<SuiteCheck>,
}

/// Full duality comparison at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub point: Vec<Complex64>,
    pub du: Vec<SuiteCheck>,
    pub entries: Vec<DualityEntry>,
    /// Largest `|∂_a𝒜_b − ∂_b𝒜_a|` over coordinate pairs.
    pub abelian_curl: f64,
}

impl DualityReport {
    /// Every asserted check passed.
    pub fn passed(&self) -> bool {
        suite_passed(&self.du) && self.entries.iter().all(|e| suite_passed(&e.checks))
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &SuiteCheck> {
        self.du.iter().chain(self.entries.iter().flat_map(|e| e.checks.iter()))
    }
}

/// Runs the duality comparison for `(k, n) = (cfg.k, cfg.n)` at the point
/// `z ∈ C^n`, for `ad`-powers up to `cfg.ad_order`.
pub fn duality_residual(point: &[Complex64], engine: &ThetaEngine, cfg: &SuiteConfig) -> Result<DualityReport> {
    let n = cfg.n;
    if point.len() != n {
        return Err(Error::Domain(alloc::format!("point needs {n} coordinates")));
    }
    let m = Model::new(cfg.k, n)?;
    let kernel = Kernel::Elliptic(engine);
    let du = duality_du_checks(&m, cfg)?;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let coeffs = kernel.series(point[i] - point[j], cfg.ad_order)?;
            for p in 0..=cfg.ad_order {
                entries.push(DualityEntry {
                    root: (i, j),
                    power: p,
                    kernel_coefficient: coeffs.coeff(p),
                    checks: duality_root_checks(&m, cfg, i, j, p)?,
                });
            }
        }
    }
    let abelian_curl = abelian_form_curl(engine, point, 1e-4)?;
    Ok(DualityReport {
        point: point.to_vec(),
        du,
        entries,
        abelian_curl,
    })
}

/// Fixed scalar weights standing in for the commuting operator coefficients
/// `a_ij` of `𝒜` in the closedness check.
fn abelian_weight(i: usize, j: usize) -> f64 {
    1.0 + i as f64 + 0.5 * (j * j) as f64
}

/// Components `𝒜_l(z) = Σ_{i<j} (θ'/θ)(z_i − z_j) a_ij (δ_il − δ_jl)`.
fn abelian_components(engine: &ThetaEngine, z: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = z.len();
    let mut a = alloc::vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in i + 1..n {
            let f = engine.theta_logderiv(z[i] - z[j])? * abelian_weight(i, j);
            a[i] += f;
            a[j] -= f;
        }
    }
    Ok(a)
}

/// Largest component of `d𝒜` by central differences of step `h`.
pub fn abelian_form_curl(engine: &ThetaEngine, z: &[Complex64], h: f64) -> Result<f64> {
    let n = z.len();
    let mut derivs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for a in 0..n {
        let mut zp = z.to_vec();
        let mut zm = z.to_vec();
        zp[a] += h;
        zm[a] -= h;
        let (fp, fm) = (abelian_components(engine, &zp)?, abelian_components(engine, &zm)?);
        derivs.push(fp.iter().zip(&fm).map(|(p, m)| (p - m) / (2.0 * h)).collect());
    }
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            worst = worst.max((derivs[a][b] - derivs[b][a]).norm());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_form_is_closed() {
        let e = ThetaEngine::new(Complex64::new(0.3, 1.1), 40).unwrap();
        let z = [
            Complex64::new(0.13, 0.21),
            Complex64::new(-0.31, 0.05),
            Complex64::new(0.27, -0.33),
            Complex64::new(0.02, 0.41),
        ];
        assert!(abelian_form_curl(&e, &z, 1e-4).unwrap() < 1e-6);
    }
}
