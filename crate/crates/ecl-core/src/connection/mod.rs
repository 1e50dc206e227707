//! Matrix-valued connection one-forms over finite-dimensional fibers.
//!
//! A [`ConnRep`] assigns matrices to the generators `t_α`, `x(u)`, `y(u)` of
//! the Lie algebra whose relations make the universal KZB connection flat.
//! Evaluating the universal form at a point `z` of the complexified Cartan
//! gives a [`OneForm`]:
//!
//! ```text
//! A = Σ_{α>0} k(α(z), ad(x(α∨)/2)|τ)(t_α) dα − Σ_i y(e_i) dz_i,
//! ```
//!
//! with the convention `∇ = d − A`, so horizontal sections solve `dF = A·F`.
//! The kernel series in `ad` is truncated at `ad_order`, with an exact stop
//! when the iterated commutators vanish.  The constant coefficient of the
//! kernel is `θ'/θ` and is taken from the logarithmic derivative directly.
//!
//! Coordinates are the ambient ones of the root system (for type `A_{n−1}`,
//! `z ∈ C^n` with `Σz_i` irrelevant because every root is traceless).

mod adjoint;
mod cherednik;
mod curvature;
pub mod delta;
pub mod duality;
mod flatness;
pub(crate) mod qlin;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::elliptic::{trig_k_series, ThetaEngine, XSeries};
use crate::error::{Error, Result};
use crate::rootsys::{Rat, Root, RootSystem};

pub use adjoint::adjoint_kappa_rep;
pub use cherednik::{
    build_small_rep_cherednik, cherednik_finite_rep, expected_finite_dimension, rational, FiniteCherednik,
    MAX_QUOTIENT_DEGREE,
};
pub use curvature::curvature_residual;
pub use flatness::{flatness_relations_check, FlatnessReport, RelationResult, RelationToggles};

/// Dense complex matrix.
pub type CMat = DMatrix<Complex64>;

/// Default truncation of the `ad`-power series.
pub const DEFAULT_AD_ORDER: usize = 8;

/// Relative size of the last retained `ad`-series term above which a
/// truncation warning is attached to the form.
pub const TRUNCATION_WARNING: f64 = 1e-8;

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub(crate) fn rat_to_c(r: Rat) -> Complex64 {
    Complex64::new(*r.numer() as f64 / *r.denom() as f64, 0.0)
}

pub(crate) fn rat_vec_to_c(v: &[Rat]) -> Vec<Complex64> {
    v.iter().map(|&r| rat_to_c(r)).collect()
}

/// Matrix images of the flatness generators on a finite-dimensional fiber.
///
/// `t` is indexed like [`RootSystem::positive_roots`]; `t_{−α}` is `t_α` by
/// definition.  `x`, `y` hold the images of the ambient basis vectors and are
/// extended linearly; for type A they are the images of the traceless
/// projections `e_i − ē`.  Optional fields feed the Casimir-form
/// bookkeeping and the Weyl-equivariance check.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnRep {
    pub label: String,
    pub dim: usize,
    pub ambient: usize,
    pub t: Vec<CMat>,
    pub x: Option<Vec<CMat>>,
    pub y: Option<Vec<CMat>>,
    pub kappa: Option<Vec<CMat>>,
    pub z_scalar: Option<Complex64>,
    pub lambda: Option<Complex64>,
    /// Reflection matrices `s_α`, one per positive root.
    pub weyl: Option<Vec<CMat>>,
}

impl ConnRep {
    /// Every map zero, `x` and `y` present.
    pub fn zero(rs: &RootSystem, dim: usize) -> ConnRep {
        let z = CMat::zeros(dim, dim);
        let amb = rs.ambient_dim();
        ConnRep {
            label: "zero".to_string(),
            dim,
            ambient: amb,
            t: alloc::vec![z.clone(); rs.positive_roots().len()],
            x: Some(alloc::vec![z.clone(); amb]),
            y: Some(alloc::vec![z; amb]),
            kappa: None,
            z_scalar: None,
            lambda: None,
            weyl: None,
        }
    }

    /// Casimir-type data: `t_α = (λ/2)κ_α + Z/h∨`, `x ↦ Q`, `y ↦ K`.
    #[allow(clippy::too_many_arguments)]
    pub fn casimir_from_kappa(
        label: &str,
        dim: usize,
        ambient: usize,
        kappa: Vec<CMat>,
        z: Complex64,
        lambda: Complex64,
        dual_coxeter: Complex64,
        q_map: Option<Vec<CMat>>,
        k_map: Option<Vec<CMat>>,
    ) -> Result<ConnRep> {
        let id = CMat::identity(dim, dim);
        let t = kappa
            .iter()
            .map(|k| k * (lambda / 2.0) + &id * (z / dual_coxeter))
            .collect();
        let rep = ConnRep {
            label: label.to_string(),
            dim,
            ambient,
            t,
            x: q_map,
            y: k_map,
            kappa: Some(kappa),
            z_scalar: Some(z),
            lambda: Some(lambda),
            weyl: None,
        };
        rep.validate_shapes()?;
        Ok(rep)
    }

    pub fn with_weyl(mut self, weyl: Vec<CMat>) -> ConnRep {
        self.weyl = Some(weyl);
        self
    }

    /// Checks that every matrix is `dim × dim` and the map lengths match.
    pub fn validate_shapes(&self) -> Result<()> {
        let sq = |m: &CMat| m.nrows() == self.dim && m.ncols() == self.dim;
        let bad = |what: &str| Error::Domain(format!("{what} has the wrong shape in {}", self.label));
        if !self.t.iter().all(sq) {
            return Err(bad("t"));
        }
        for (name, map) in [("x", &self.x), ("y", &self.y)] {
            if let Some(v) = map {
                if v.len() != self.ambient || !v.iter().all(sq) {
                    return Err(bad(name));
                }
            }
        }
        for (name, map) in [("kappa", &self.kappa), ("weyl", &self.weyl)] {
            if let Some(v) = map {
                if v.len() != self.t.len() || !v.iter().all(sq) {
                    return Err(bad(name));
                }
            }
        }
        Ok(())
    }

    /// `t_α` for any root `α` (positive or negative).
    pub fn t_of(&self, rs: &RootSystem, alpha: &Root) -> Result<&CMat> {
        let pos = rs.positive_roots();
        let i = pos
            .iter()
            .position(|r| r == alpha || *r == alpha.neg())
            .ok_or_else(|| Error::Domain(format!("{:?} is not a root", alpha.0)))?;
        Ok(&self.t[i])
    }

    fn linear(map: &Option<Vec<CMat>>, dim: usize, u: &[Complex64]) -> Option<CMat> {
        map.as_ref().map(|v| {
            let mut m = CMat::zeros(dim, dim);
            for (c, mi) in u.iter().zip(v) {
                if !c.is_zero() {
                    m += mi * *c;
                }
            }
            m
        })
    }

    /// `x(u)` for an ambient vector `u`.
    pub fn x_of(&self, u: &[Complex64]) -> Option<CMat> {
        ConnRep::linear(&self.x, self.dim, u)
    }

    /// `y(u)` for an ambient vector `u`.
    pub fn y_of(&self, u: &[Complex64]) -> Option<CMat> {
        ConnRep::linear(&self.y, self.dim, u)
    }

    /// Multiplies every `t_α` by `s`.
    pub fn scale_t(&self, s: Complex64) -> ConnRep {
        let mut r = self.clone();
        r.t = r.t.iter().map(|m| m * s).collect();
        r
    }
}

/// The scalar kernel substituted into the `ad`-series.
#[derive(Debug, Clone, Copy)]
pub enum Kernel<'a> {
    /// `k(z, x|τ) = θ(z+x)/(θ(z)θ(x)) − 1/x`.
    Elliptic(&'a ThetaEngine),
    /// The `Im τ → ∞` limit `2πi(1/(e^{2πiz}−1) + e^{2πix}/(e^{2πix}−1)) − 1/x`.
    Trigonometric,
}

impl Kernel<'_> {
    /// Coefficients of the kernel in `x` up to `order`, with the constant
    /// term replaced by the directly evaluated logarithmic derivative.
    pub fn series(&self, z: Complex64, order: usize) -> Result<XSeries> {
        let s = match self {
            Kernel::Elliptic(e) => e.k_series(z, order)?,
            Kernel::Trigonometric => trig_k_series(z, order)?,
        };
        let mut c = s.coeffs().to_vec();
        c[0] = self.logderiv(z)?;
        Ok(XSeries::from_coeffs(c))
    }

    /// The constant coefficient `θ'/θ(z)` (or its trigonometric limit
    /// `πi(e^{2πiz}+1)/(e^{2πiz}−1)`).
    pub fn logderiv(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Kernel::Elliptic(e) => e.theta_logderiv(z),
            Kernel::Trigonometric => Ok(trig_k_series(z, 0)?.coeff(0)),
        }
    }

    /// Modular parameter, if any.
    pub fn tau(&self) -> Option<Complex64> {
        match self {
            Kernel::Elliptic(e) => Some(e.tau()),
            Kernel::Trigonometric => None,
        }
    }
}

/// Result of substituting `ad(X)` into a scalar series.
#[derive(Debug, Clone)]
pub struct AdSeries {
    pub value: CMat,
    /// Number of `ad`-powers that contributed before the commutators vanished
    /// (`None` if the series was cut at the truncation order).
    pub terminated_at: Option<usize>,
    /// Modulus of the last retained term relative to the value.
    pub tail_estimate: f64,
}

/// `Σ_{p≤order} c_p ad(X)^p(T)`; stops exactly when `ad(X)^p(T) = 0`.
pub fn ad_series(coeffs: &XSeries, x: Option<&CMat>, t: &CMat, order: usize) -> AdSeries {
    let mut value = t * coeffs.coeff(0);
    let mut cur = t.clone();
    let mut last = max_abs(&value);
    let Some(x) = x else {
        return AdSeries {
            value,
            terminated_at: Some(0),
            tail_estimate: 0.0,
        };
    };
    for p in 1..=order {
        cur = commutator(x, &cur);
        if cur.iter().all(|z| z.is_zero()) {
            return AdSeries {
                value,
                terminated_at: Some(p - 1),
                tail_estimate: 0.0,
            };
        }
        let term = &cur * coeffs.coeff(p);
        last = max_abs(&term);
        value += term;
    }
    let scale = max_abs(&value).max(1e-300);
    AdSeries {
        value,
        terminated_at: None,
        tail_estimate: last / scale,
    }
}

/// Coordinate differential labelling a one-form component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Differential {
    /// `dα` for a positive root.
    Root(Root),
    /// `dz_i` for an ambient coordinate.
    Coordinate(usize),
}

/// A matrix-valued one-form evaluated at a point.
#[derive(Debug, Clone)]
pub struct OneForm {
    pub point: Vec<Complex64>,
    pub tau: Option<Complex64>,
    pub ad_order: usize,
    pub components: Vec<(Differential, CMat)>,
    pub warnings: Vec<String>,
}

impl OneForm {
    /// Contraction with an ambient tangent vector `w`.
    pub fn contract(&self, w: &[Complex64]) -> CMat {
        let dim = self.components.first().map_or(0, |(_, m)| m.nrows());
        let mut out = CMat::zeros(dim, dim);
        for (d, m) in &self.components {
            let c = match d {
                Differential::Root(a) => {
                    a.0.iter()
                        .zip(w)
                        .fold(Complex64::zero(), |s, (&ai, wi)| s + wi * ai as f64)
                }
                Differential::Coordinate(i) => w[*i],
            };
            if !c.is_zero() {
                out += m * c;
            }
        }
        out
    }

    /// Components in the ambient chart: `A_i = A(e_i)`.
    pub fn ambient_components(&self) -> Vec<CMat> {
        let n = self.point.len();
        (0..n)
            .map(|i| {
                let mut e = alloc::vec![Complex64::zero(); n];
                e[i] = Complex64::new(1.0, 0.0);
                self.contract(&e)
            })
            .collect()
    }

    /// Largest entry difference between the ambient components of two forms.
    pub fn max_diff(&self, other: &OneForm) -> f64 {
        self.ambient_components()
            .iter()
            .zip(other.ambient_components().iter())
            .fold(0.0, |a, (p, q)| a.max(max_abs(&(p - q))))
    }
}

/// `(α, z)` in ambient coordinates.
pub fn root_value(alpha: &Root, z: &[Complex64]) -> Complex64 {
    alpha
        .0
        .iter()
        .zip(z)
        .fold(Complex64::zero(), |s, (&a, zi)| s + zi * a as f64)
}

fn root_label(alpha: &Root) -> String {
    format!("{:?}", alpha.0)
}

fn guard_divisor(kernel: &Kernel<'_>, alpha: &Root, a: Complex64) -> Result<()> {
    kernel.logderiv(a).map(|_| ()).map_err(|e| match e {
        Error::Singularity { near_re, near_im, .. } => Error::Singularity {
            what: format!("point lies on the divisor of root {}", root_label(alpha)),
            near_re,
            near_im,
        },
        other => other,
    })
}

/// Evaluates the universal KZB form on `rep` at `z`.
///
/// Requires `z.len()` equal to the ambient dimension.  When `rep` has no `x`
/// map only the `ad⁰` term survives and a warning says so; when it has no `y`
/// map the `dz_i` components are omitted.
pub fn assemble_kzb_form(
    rep: &ConnRep,
    rs: &RootSystem,
    z: &[Complex64],
    kernel: Kernel<'_>,
    ad_order: usize,
) -> Result<OneForm> {
    if z.len() != rs.ambient_dim() || rep.ambient != rs.ambient_dim() {
        return Err(Error::Domain(format!(
            "point has {} coordinates, root system needs {}",
            z.len(),
            rs.ambient_dim()
        )));
    }
    if rep.t.len() != rs.positive_roots().len() {
        return Err(Error::Domain("t map does not match the positive roots".to_string()));
    }
    let mut warnings = Vec::new();
    if rep.x.is_none() {
        warnings.push("x map absent: only the ad^0 term of the kernel is used".to_string());
    }
    let mut components = Vec::new();
    for (alpha, t) in rs.positive_roots().iter().zip(&rep.t) {
        let a = root_value(alpha, z);
        guard_divisor(&kernel, alpha, a)?;
        let coeffs = kernel.series(a, ad_order)?;
        let half_coroot: Vec<Complex64> = rat_vec_to_c(&rs.coroot(alpha)).into_iter().map(|c| c / 2.0).collect();
        let x = rep.x_of(&half_coroot);
        let s = ad_series(&coeffs, x.as_ref(), t, ad_order);
        if s.terminated_at.is_none() && s.tail_estimate > TRUNCATION_WARNING {
            warnings.push(format!(
                "ad-series for root {} truncated at order {ad_order} with relative tail {:.3e}",
                root_label(alpha),
                s.tail_estimate
            ));
        }
        components.push((Differential::Root(alpha.clone()), s.value));
    }
    if let Some(y) = &rep.y {
        for (i, yi) in y.iter().enumerate() {
            components.push((Differential::Coordinate(i), -yi));
        }
    }
    Ok(OneForm {
        point: z.to_vec(),
        tau: kernel.tau(),
        ad_order,
        components,
        warnings,
    })
}

/// The elliptic Casimir form: `rep` must carry `κ`, `Z` and `λ`, with `x ↦ Q`
/// and `y ↦ K`; `t_α = (λ/2)κ_α + Z/h∨` is rebuilt from them.
pub fn assemble_casimir_form(
    rep: &ConnRep,
    rs: &RootSystem,
    z: &[Complex64],
    kernel: Kernel<'_>,
    ad_order: usize,
) -> Result<OneForm> {
    let (Some(kappa), Some(zs), Some(lambda)) = (&rep.kappa, rep.z_scalar, rep.lambda) else {
        return Err(Error::Capability(
            "the Casimir form needs kappa, Z and lambda".to_string(),
        ));
    };
    let hv = rat_to_c(rs.dual_coxeter()?);
    let rebuilt = ConnRep::casimir_from_kappa(
        &rep.label,
        rep.dim,
        rep.ambient,
        kappa.clone(),
        zs,
        lambda,
        hv,
        rep.x.clone(),
        rep.y.clone(),
    )?;
    assemble_kzb_form(&rebuilt, rs, z, kernel, ad_order)
}

/// The rational Cherednik form: the KZB form of a Cherednik representation
/// (`x` multiplication, `y` Dunkl operators, `t_γ = ħ/h∨ − c s_γ`).
pub fn assemble_cherednik_form(
    rep: &FiniteCherednik,
    rs: &RootSystem,
    z: &[Complex64],
    kernel: Kernel<'_>,
    ad_order: usize,
) -> Result<OneForm> {
    assemble_kzb_form(&rep.to_conn_rep(), rs, z, kernel, ad_order)
}

/// The per-coordinate form of type `A_{n−1}`:
/// `A = Σ_i (Σ_{j≠i} k(z_i − z_j, ad x_i)(t_ij) − y_i) dz_i`.
pub fn assemble_glk_kzb_form(
    rep: &ConnRep,
    rs: &RootSystem,
    z: &[Complex64],
    kernel: Kernel<'_>,
    ad_order: usize,
) -> Result<OneForm> {
    let n = rs.ambient_dim();
    if rs.family() != crate::rootsys::Family::A {
        return Err(Error::Unsupported {
            label: rs.family().label().to_string(),
            rank: rs.rank(),
        });
    }
    if z.len() != n {
        return Err(Error::Domain(format!("point needs {n} coordinates")));
    }
    let mut warnings = Vec::new();
    let mut components = Vec::new();
    for i in 0..n {
        let mut ci = CMat::zeros(rep.dim, rep.dim);
        let xi = rep.x.as_ref().map(|x| x[i].clone());
        for j in (0..n).filter(|&j| j != i) {
            let mut alpha = alloc::vec![0i64; n];
            alpha[i] = 1;
            alpha[j] = -1;
            let alpha = Root(alpha);
            let a = z[i] - z[j];
            guard_divisor(&kernel, &alpha, a)?;
            let coeffs = kernel.series(a, ad_order)?;
            let s = ad_series(&coeffs, xi.as_ref(), rep.t_of(rs, &alpha)?, ad_order);
            if s.terminated_at.is_none() && s.tail_estimate > TRUNCATION_WARNING {
                warnings.push(format!(
                    "ad-series for coordinate pair ({i},{j}) truncated with relative tail {:.3e}",
                    s.tail_estimate
                ));
            }
            ci += s.value;
        }
        if let Some(y) = &rep.y {
            ci -= &y[i];
        }
        components.push((Differential::Coordinate(i), ci));
    }
    Ok(OneForm {
        point: z.to_vec(),
        tau: kernel.tau(),
        ad_order,
        components,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn central_t_gives_log_derivative() {
        let rs = RootSystem::from_label("A", 2).unwrap();
        let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
        let mut rep = ConnRep::zero(&rs, 2);
        rep.x = Some(alloc::vec![CMat::from_fn(2, 2, |i, j| c((i + 2 * j) as f64, 0.5)); 3]);
        rep.t = alloc::vec![CMat::identity(2, 2) * c(0.7, 0.0); 3];
        let z = [c(0.11, 0.07), c(-0.23, 0.19), c(0.12, -0.26)];
        let f = assemble_kzb_form(&rep, &rs, &z, Kernel::Elliptic(&e), 8).unwrap();
        for (d, m) in &f.components {
            if let Differential::Root(a) = d {
                let want = e.theta_logderiv(root_value(a, &z)).unwrap() * 0.7;
                assert!((m[(0, 0)] - want).norm() < 1e-12);
                assert!(m[(0, 1)].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn divisor_is_reported() {
        let rs = RootSystem::from_label("A", 1).unwrap();
        let e = ThetaEngine::new(c(0.3, 1.1), 40).unwrap();
        let rep = ConnRep::zero(&rs, 1);
        let z = [c(0.5, 0.0), c(0.5, 0.0)];
        let err = assemble_kzb_form(&rep, &rs, &z, Kernel::Elliptic(&e), 4).unwrap_err();
        assert!(matches!(err, Error::Singularity { .. }));
    }
}
