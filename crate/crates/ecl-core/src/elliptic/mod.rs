//! The odd Jacobi theta function and the kernels built from it.
//!
//! `θ(z|τ)` is evaluated only through its product formula
//!
//! ```text
//! θ(z|τ) = e^{πiz} ∏_{s≥1}(1 − q^s u) ∏_{s≥0}(1 − q^s/u) / (2πi ∏_{s≥1}(1 − q^s)²),
//! u = e^{2πiz}, q = e^{2πiτ},
//! ```
//!
//! normalised so that `θ'(0) = 1`.  From it come
//!
//! * `k(z, x) = θ(z+x)/(θ(z)θ(x)) − 1/x` as a power series in `x`,
//! * `g(z, x) = ∂_x k(z, x)`,
//! * `φ(x) = g(0,0) − g(0,x) = Σ_{n≥1} a_{2n} E_{2n+2}(τ) x^{2n}`, which fixes the
//!   Eisenstein normalisation used here: `E_{2n+2}(τ) := [x^{2n}]φ / a_{2n}`.
//!
//! The removable pole of `k` at `x = 0` is cancelled by series division, never
//! by subtracting nearly equal numbers.

pub mod consts;
pub mod series;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::math::{cexp, round, sqrt, two_pi_i};

pub use consts::{a2n_coeffs, bernoulli, trig_c_coeffs, PiMultiple};
pub use series::XSeries;

/// Default number of product factors / q-powers.
pub const DEFAULT_TRUNCATION: usize = 40;
/// Default order of x-series.
pub const DEFAULT_ORDER: usize = 8;
/// Default singularity guard, in lattice-normalised units.
pub const DEFAULT_EPS: f64 = 1e-6;
/// Number of `a_{2n}` entries precomputed for Eisenstein extraction.
pub const A2N_TABLE: usize = 24;

/// Theta-function evaluator for a fixed modular parameter.
#[derive(Debug, Clone)]
pub struct ThetaEngine {
    tau: Complex64,
    q: Complex64,
    n: usize,
    eps: f64,
}

impl ThetaEngine {
    /// Creates an engine; `Im τ` must be positive and `n ≥ 1`.
    pub fn new(tau: Complex64, n: usize) -> Result<ThetaEngine> {
        if !(tau.im > 0.0) || !tau.re.is_finite() {
            return Err(Error::Domain(alloc::format!(
                "Im(tau) must be positive, got {}",
                tau.im
            )));
        }
        if n == 0 {
            return Err(Error::Domain("q-truncation must be at least 1".to_string()));
        }
        Ok(ThetaEngine {
            tau,
            q: cexp(two_pi_i() * tau),
            n,
            eps: DEFAULT_EPS,
        })
    }

    /// Overrides the singularity guard.
    pub fn with_eps(mut self, eps: f64) -> ThetaEngine {
        self.eps = eps;
        self
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `q^s` for `s = 0..=n`.
    fn q_powers(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(self.n + 1);
        let mut p = Complex64::one();
        for _ in 0..=self.n {
            v.push(p);
            p *= self.q;
        }
        v
    }

    /// `θ(z|τ)` from the truncated product formula.
    pub fn theta(&self, z: Complex64) -> Complex64 {
        let u = cexp(two_pi_i() * z);
        let uinv = Complex64::one() / u;
        let qp = self.q_powers();
        let mut prod = cexp(Complex64::new(0.0, PI) * z) * (Complex64::one() - uinv);
        for s in 1..=self.n {
            let f = (Complex64::one() - qp[s] * u) * (Complex64::one() - qp[s] * uinv);
            let d = Complex64::one() - qp[s];
            prod *= f / (d * d);
        }
        prod / two_pi_i()
    }

    /// Dedekind eta `q^{1/24} ∏_{s≥1}(1 − q^s)`.
    pub fn eta(&self) -> Complex64 {
        let qp = self.q_powers();
        let mut prod = cexp(two_pi_i() * self.tau / 24.0);
        for p in qp.iter().skip(1) {
            prod *= Complex64::one() - p;
        }
        prod
    }

    /// Writes `z = a + bτ` with real `a, b` and returns the nearest lattice
    /// point `m + nτ` and the distance in `(a, b)` coordinates.
    pub fn nearest_lattice_point(&self, z: Complex64) -> (Complex64, f64) {
        let b = z.im / self.tau.im;
        let a = z.re - b * self.tau.re;
        let (ra, rb) = (round(a), round(b));
        let d = sqrt((a - ra) * (a - ra) + (b - rb) * (b - rb));
        (Complex64::new(ra, 0.0) + self.tau * rb, d)
    }

    /// Fails with a singularity error if `z` is within `eps` of `Z + Zτ`.
    pub fn guard(&self, z: Complex64) -> Result<()> {
        let (p, d) = self.nearest_lattice_point(z);
        if d < self.eps {
            return Err(Error::Singularity {
                what: alloc::format!("argument {z} lies on the lattice"),
                near_re: p.re,
                near_im: p.im,
            });
        }
        Ok(())
    }

    /// `θ'(z)/θ(z)` by term-wise logarithmic differentiation of the product.
    pub fn theta_logderiv(&self, z: Complex64) -> Result<Complex64> {
        self.guard(z)?;
        let tpi = two_pi_i();
        let u = cexp(tpi * z);
        let uinv = Complex64::one() / u;
        let qp = self.q_powers();
        let mut acc = Complex64::new(0.0, PI);
        for s in 0..=self.n {
            let b = qp[s] * uinv;
            acc += tpi * b / (Complex64::one() - b);
            if s >= 1 {
                let a = qp[s] * u;
                acc -= tpi * a / (Complex64::one() - a);
            }
        }
        Ok(acc)
    }

    /// Series of `θ(x)/x` in `x` to the given order, normalised to start at 1.
    fn theta_over_x_series(&self, order: usize) -> XSeries {
        let ep = &XSeries::exp_linear(two_pi_i(), order) - &XSeries::constant(Complex64::one(), order);
        let em = &XSeries::exp_linear(-two_pi_i(), order) - &XSeries::constant(Complex64::one(), order);
        let mut t = sinc_pi_series(order);
        let qp = self.q_powers();
        for p in qp.iter().skip(1) {
            let c = p / (Complex64::one() - p);
            let f1 = &XSeries::constant(Complex64::one(), order) - &ep.scale(c);
            let f2 = &XSeries::constant(Complex64::one(), order) - &em.scale(c);
            t = &(&t * &f1) * &f2;
        }
        t
    }

    /// Series of `θ(z+x)/θ(z)` in `x` to the given order.
    fn theta_shift_ratio_series(&self, z: Complex64, order: usize) -> XSeries {
        let one = XSeries::constant(Complex64::one(), order);
        let ep = &XSeries::exp_linear(two_pi_i(), order) - &one;
        let em = &XSeries::exp_linear(-two_pi_i(), order) - &one;
        let u = cexp(two_pi_i() * z);
        let uinv = Complex64::one() / u;
        let mut r = XSeries::exp_linear(Complex64::new(0.0, PI), order);
        let qp = self.q_powers();
        for s in 0..=self.n {
            let b = qp[s] * uinv;
            r = &r * &(&one - &em.scale(b / (Complex64::one() - b)));
            if s >= 1 {
                let a = qp[s] * u;
                r = &r * &(&one - &ep.scale(a / (Complex64::one() - a)));
            }
        }
        r
    }

    /// Coefficients of `k(z, x|τ)` in powers of `x` up to `order`.
    ///
    /// `x·θ(z+x)/(θ(z)θ(x)) = [θ(z+x)/θ(z)] / [θ(x)/x]` is a series starting
    /// at 1; subtracting 1 and dividing by `x` cancels the pole exactly.
    pub fn k_series(&self, z: Complex64, order: usize) -> Result<XSeries> {
        self.guard(z)?;
        let m = order + 1;
        let num = self.theta_shift_ratio_series(z, m);
        let den = self.theta_over_x_series(m);
        let s = num
            .div(&den)
            .ok_or_else(|| Error::Internal("θ(x)/x has zero constant term".to_string()))?;
        Ok(s.shift_down())
    }

    /// Coefficients of `g(z, x|τ) = ∂_x k(z, x|τ)` up to `order`.
    pub fn g_series(&self, z: Complex64, order: usize) -> Result<XSeries> {
        Ok(self.k_series(z, order + 1)?.derivative())
    }

    /// Regular part of `g` at `z = 0`: `g₀(x) = (θ'/θ)'(x) + 1/x²`.
    pub fn g0_regular_series(&self, order: usize) -> XSeries {
        let t = self.theta_over_x_series(order + 2);
        // (θ'/θ)(x) − 1/x = T'/T with T = θ(x)/x.
        let l = t.derivative().div(&t).expect("θ(x)/x starts at 1");
        l.derivative()
    }

    /// `φ(x) = g₀(0) − g₀(x)` up to `order` (which must be even and ≥ 2).
    pub fn phi_series(&self, order: usize) -> Result<XSeries> {
        if order < 2 || order % 2 == 1 {
            return Err(Error::Domain(
                "phi_series needs an even order of at least 2".to_string(),
            ));
        }
        let g0 = self.g0_regular_series(order);
        let c0 = g0.coeff(0);
        Ok(&XSeries::constant(c0, order) - &g0)
    }

    /// `E_{2n+2}(τ) = [x^{2n}]φ / a_{2n}` for `1 ≤ n ≤` [`A2N_TABLE`].
    pub fn eisenstein(&self, n: usize) -> Result<Complex64> {
        if n == 0 || n > A2N_TABLE {
            return Err(Error::Range(alloc::format!(
                "Eisenstein index n={n} outside 1..={A2N_TABLE}"
            )));
        }
        let phi = self.phi_series(2 * n)?;
        let a = a2n_coeffs(n)[n].to_f64();
        Ok(phi.coeff(2 * n) / a)
    }
}

/// Series of `sin(πx)/(πx)`.
fn sinc_pi_series(order: usize) -> XSeries {
    let mut c = alloc::vec![Complex64::zero(); order + 1];
    let mut term = 1.0f64;
    let mut j = 0;
    while 2 * j <= order {
        c[2 * j] = Complex64::new(term, 0.0);
        term *= -PI * PI / (((2 * j + 2) * (2 * j + 3)) as f64);
        j += 1;
    }
    XSeries::from_coeffs(c)
}

/// Trigonometric kernel `2πi(1/(e^{2πiz}−1) + e^{2πix}/(e^{2πix}−1)) − 1/x`
/// as a series in `x`, the `Im τ → ∞` limit of [`ThetaEngine::k_series`].
///
/// `2πi e^{y}/(e^{y}−1) − 1/x` with `y = 2πix` equals
/// `2πi Σ_{r≥1} (−1)^r B_r y^{r−1}/r!`.
pub fn trig_k_series(z: Complex64, order: usize) -> Result<XSeries> {
    let w = cexp(two_pi_i() * z) - Complex64::one();
    if w.norm() < 1e-14 {
        return Err(Error::Singularity {
            what: "trigonometric kernel at an integer".to_string(),
            near_re: round(z.re),
            near_im: 0.0,
        });
    }
    let b = bernoulli(order + 1);
    let mut c = alloc::vec![Complex64::zero(); order + 1];
    let mut ypow = Complex64::one(); // (2πi)^{r-1}
    let mut fact = 1.0f64;
    for r in 1..=order + 1 {
        fact *= r as f64;
        let br = rat_to_f64(&b[r]);
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        c[r - 1] = two_pi_i() * ypow * (sign * br / fact);
        ypow *= two_pi_i();
    }
    c[0] += two_pi_i() / w;
    Ok(XSeries::from_coeffs(c))
}

pub(crate) fn rat_to_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// `ϑ = η³θ` at `(z, τ)`.
fn vartheta(tau: Complex64, n: usize, z: Complex64) -> Result<Complex64> {
    let e = ThetaEngine::new(tau, n)?;
    let eta = e.eta();
    Ok(eta * eta * eta * e.theta(z))
}

/// `|∂_τϑ − (1/4πi)∂_z²ϑ|` by central differences of step `h`.
pub fn heat_equation_residual(tau: Complex64, n: usize, z: Complex64, h: f64) -> Result<f64> {
    let hc = Complex64::new(h, 0.0);
    let dtau = (vartheta(tau + hc, n, z)? - vartheta(tau - hc, n, z)?) / (2.0 * h);
    let d2z = (vartheta(tau, n, z + hc)? - vartheta(tau, n, z)? * 2.0 + vartheta(tau, n, z - hc)?) / (h * h);
    let four_pi_i = Complex64::new(0.0, 4.0 * PI);
    Ok((dtau - d2z / four_pi_i).norm())
}

/// Relative difference `|a − b| / max(|a|, |b|, tiny)`.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm()).max(1e-300);
    (a - b).norm() / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonpositive_tau_is_rejected() {
        assert!(ThetaEngine::new(Complex64::new(0.3, 0.0), 40).is_err());
        assert!(ThetaEngine::new(Complex64::new(0.3, -1.0), 40).is_err());
    }

    #[test]
    fn lattice_guard() {
        let e = ThetaEngine::new(Complex64::new(0.3, 1.1), 40).unwrap();
        let z = Complex64::new(1.0, 0.0) + e.tau();
        assert!(matches!(e.theta_logderiv(z), Err(Error::Singularity { .. })));
    }
}
