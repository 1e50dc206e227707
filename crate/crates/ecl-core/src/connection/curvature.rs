//! Numerical curvature of an evaluated KZB form.
//!
//! With `∇ = d − A` the curvature components are
//! `F_ab = ∂_a A_b − ∂_b A_a − [A_a, A_b]`; the derivatives are taken by the
//! fourth-order central stencil.  This is only meaningful for a
//! representation carrying all of `t`, `x` and `y`.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{assemble_kzb_form, commutator, max_abs, CMat, ConnRep, Kernel};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

fn components(
    rep: &ConnRep,
    rs: &RootSystem,
    z: &[Complex64],
    kernel: Kernel<'_>,
    ad_order: usize,
) -> Result<Vec<CMat>> {
    Ok(assemble_kzb_form(rep, rs, z, kernel, ad_order)?.ambient_components())
}

/// Largest entry of the curvature at `z`, divided by
/// `max(1, max |A|)²`, with finite-difference step `h`.
pub fn curvature_residual(
    rep: &ConnRep,
    rs: &RootSystem,
    z: &[Complex64],
    kernel: Kernel<'_>,
    ad_order: usize,
    h: f64,
) -> Result<f64> {
    if rep.x.is_none() || rep.y.is_none() {
        return Err(Error::Capability("curvature needs the x and y maps".into()));
    }
    if !(h > 0.0) {
        return Err(Error::Domain("finite-difference step must be positive".into()));
    }
    let n = z.len();
    let a0 = components(rep, rs, z, kernel, ad_order)?;
    // derivs[a][b] = ∂_a A_b
    let mut derivs: Vec<Vec<CMat>> = Vec::with_capacity(n);
    for a in 0..n {
        let shifted = |k: f64| -> Result<Vec<CMat>> {
            let mut p = z.to_vec();
            p[a] += k * h;
            components(rep, rs, &p, kernel, ad_order)
        };
        let (p1, m1, p2, m2) = (shifted(1.0)?, shifted(-1.0)?, shifted(2.0)?, shifted(-2.0)?);
        derivs.push(
            (0..n)
                .map(|b| {
                    ((&p1[b] - &m1[b]) * Complex64::new(8.0, 0.0) - (&p2[b] - &m2[b])) / Complex64::new(12.0 * h, 0.0)
                })
                .collect(),
        );
    }
    let scale = a0.iter().fold(1.0f64, |m, c| m.max(max_abs(c)));
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in a + 1..n {
            let f = &derivs[a][b] - &derivs[b][a] - commutator(&a0[a], &a0[b]);
            worst = worst.max(max_abs(&f));
        }
    }
    Ok(worst / (scale * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{build_small_rep_cherednik, cherednik_finite_rep, rational};
    use crate::elliptic::ThetaEngine;

    #[test]
    fn finite_cherednik_form_is_flat_and_small_rep_is_refused() {
        let rs = RootSystem::from_label("A", 2).unwrap();
        let e = ThetaEngine::new(Complex64::new(0.3, 1.1), 40).unwrap();
        let z = [
            Complex64::new(0.05, 0.02),
            Complex64::new(0.4, 0.3),
            Complex64::new(-0.2, 0.6),
        ];
        let rep = cherednik_finite_rep(3, rational(1, 1), rational(2, 3))
            .unwrap()
            .to_conn_rep();
        let r = curvature_residual(&rep, &rs, &z, Kernel::Elliptic(&e), 8, 1e-3).unwrap();
        assert!(r < 1e-8, "curvature {r}");
        let small = build_small_rep_cherednik(&rs, Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)).unwrap();
        assert!(matches!(
            curvature_residual(&small, &rs, &z, Kernel::Elliptic(&e), 8, 1e-3),
            Err(Error::Capability(_))
        ));
    }
}
