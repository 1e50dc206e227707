//! The `dτ` component of the connection extended over the moduli of the
//! elliptic curve:
//!
//! ```text
//! Δ = −(1/2πi) 𝕀H − (1/2πi) Σ_{m≥1} a_{2m} E_{2m+2}(τ) 𝕀E_{2m}
//!     + (1/2πi) Σ_{β>0} g(β(z), ad(x(β∨)/2)|τ)((λ/2)κ_β − Z/h∨).
//! ```
//!
//! The derivation images `𝕀H`, `𝕀E_{2m}` are optional; omitted summands are
//! listed in the result.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{ad_series, rat_to_c, rat_vec_to_c, root_value, CMat, ConnRep};
use crate::elliptic::{a2n_coeffs, ThetaEngine};
use crate::error::{Error, Result};
use crate::math::two_pi_i;
use crate::rootsys::RootSystem;

/// Optional matrices for the derivation part of `Δ`.
#[derive(Debug, Clone, Default)]
pub struct DerivationImages {
    pub ih: Option<CMat>,
    /// `𝕀E_{2m}` for `m = 1, 2, …`.
    pub ie: Vec<CMat>,
}

/// Evaluated `Δ` with bookkeeping.
#[derive(Debug, Clone)]
pub struct DeltaSeries {
    pub matrix: CMat,
    /// `a_{2m} E_{2m+2}(τ)` for the supplied `𝕀E_{2m}`.
    pub eisenstein_weights: Vec<Complex64>,
    /// Summands left out for lack of data.
    pub omitted: Vec<String>,
}

/// Assembles `Δ` at `(z, τ)`; `rep` must carry `κ`, `Z` and `λ`.
pub fn modular_delta_series(
    engine: &ThetaEngine,
    rs: &RootSystem,
    rep: &ConnRep,
    z: &[Complex64],
    derivations: &DerivationImages,
    ad_order: usize,
) -> Result<DeltaSeries> {
    let (Some(kappa), Some(zs), Some(lambda)) = (&rep.kappa, rep.z_scalar, rep.lambda) else {
        return Err(Error::Capability("Δ needs kappa, Z and lambda".to_string()));
    };
    if z.len() != rs.ambient_dim() {
        return Err(Error::Domain("point does not match the root system".to_string()));
    }
    let square = |m: &CMat| m.nrows() == rep.dim && m.ncols() == rep.dim;
    if !derivations.ih.iter().chain(&derivations.ie).all(square) {
        return Err(Error::Domain(format!(
            "derivation images must be {0}×{0} for {1}",
            rep.dim, rep.label
        )));
    }
    let hv = rat_to_c(rs.dual_coxeter()?);
    let id = CMat::identity(rep.dim, rep.dim);
    let inv = Complex64::new(1.0, 0.0) / two_pi_i();
    let mut omitted = Vec::new();
    let mut total = CMat::zeros(rep.dim, rep.dim);
    match &derivations.ih {
        Some(h) => total -= h * inv,
        None => omitted.push("IH".to_string()),
    }
    let mut eisenstein_weights = Vec::new();
    if derivations.ie.is_empty() {
        omitted.push("IE_{2m}".to_string());
    } else {
        let a = a2n_coeffs(derivations.ie.len());
        for (m, e) in derivations.ie.iter().enumerate() {
            let w = engine.eisenstein(m + 1)? * a[m + 1].to_f64();
            eisenstein_weights.push(w);
            total -= e * (w * inv);
        }
    }
    for (beta, kb) in rs.positive_roots().iter().zip(kappa) {
        let b = root_value(beta, z);
        engine.guard(b).map_err(|e| match e {
            Error::Singularity { near_re, near_im, .. } => Error::Singularity {
                what: format!("point lies on the divisor of root {:?}", beta.0),
                near_re,
                near_im,
            },
            other => other,
        })?;
        let g = engine.g_series(b, ad_order)?;
        let half: Vec<Complex64> = rat_vec_to_c(&rs.coroot(beta)).into_iter().map(|c| c / 2.0).collect();
        let x = rep.x_of(&half);
        let arg = kb * (lambda / 2.0) - &id * (zs / hv);
        total += ad_series(&g, x.as_ref(), &arg, ad_order).value * inv;
    }
    Ok(DeltaSeries {
        matrix: total,
        eisenstein_weights,
        omitted,
    })
}
