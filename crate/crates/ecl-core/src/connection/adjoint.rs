//! The adjoint representation of `gl_n` with `t_α = κ_α` and `x = y = 0`.
//!
//! This is a Casimir-type representation that does *not* satisfy the flatness
//! relations: with `x` and `y` zero, `[y(u), x(v)] = Σ (v,γ)(u,γ) t_γ`
//! forces `Σ_γ (v,γ)(u,γ) κ_γ = 0`, which fails.  It serves as the negative
//! control of the relation checker.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{rat_to_c, CMat, ConnRep};
use crate::error::{Error, Result};
use crate::rootsys::{Family, RootSystem};

/// `ad(E_ab)` on `gl_n` in the basis `E_ij ↦ i·n + j`.
fn ad_elementary(n: usize, a: usize, b: usize) -> CMat {
    let one = Complex64::new(1.0, 0.0);
    let mut m = CMat::zeros(n * n, n * n);
    // [E_ab, E_ij] = δ_bi E_aj − δ_ja E_ib
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if b == i {
                m[(a * n + j, col)] += one;
            }
            if j == a {
                m[(i * n + b, col)] -= one;
            }
        }
    }
    m
}

/// Conjugation by the transposition `(i j)` on `gl_n`.
fn ad_transposition(n: usize, i: usize, j: usize) -> CMat {
    let swap = |k: usize| {
        if k == i {
            j
        } else if k == j {
            i
        } else {
            k
        }
    };
    let mut m = CMat::zeros(n * n, n * n);
    for p in 0..n {
        for q in 0..n {
            m[(swap(p) * n + swap(q), p * n + q)] = Complex64::new(1.0, 0.0);
        }
    }
    m
}

/// The adjoint representation of `gl_n` for the root system `A_{n−1}`,
/// with `t_α = κ_α = ad(E_ij)ad(E_ji) + ad(E_ji)ad(E_ij)`, zero `x`, `y`,
/// and the Weyl group acting by permutation conjugation.
pub fn adjoint_kappa_rep(rs: &RootSystem) -> Result<ConnRep> {
    if rs.family() != Family::A {
        return Err(Error::Unsupported {
            label: rs.family().label().into(),
            rank: rs.rank(),
        });
    }
    let n = rs.ambient_dim();
    let dim = n * n;
    let mut kappa = Vec::new();
    let mut weyl = Vec::new();
    for alpha in rs.positive_roots() {
        let i = alpha.0.iter().position(|&c| c == 1);
        let j = alpha.0.iter().position(|&c| c == -1);
        let (Some(i), Some(j)) = (i, j) else {
            return Err(Error::Internal(format!("unexpected type-A root {:?}", alpha.0)));
        };
        let (eij, eji) = (ad_elementary(n, i, j), ad_elementary(n, j, i));
        kappa.push(&eij * &eji + &eji * &eij);
        weyl.push(ad_transposition(n, i, j));
    }
    let zero = alloc::vec![CMat::zeros(dim, dim); n];
    let rep = ConnRep::casimir_from_kappa(
        "adjoint-kappa",
        dim,
        n,
        kappa,
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        rat_to_c(rs.dual_coxeter()?),
        Some(zero.clone()),
        Some(zero),
    )?;
    Ok(rep.with_weyl(weyl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::{flatness_relations_check, max_abs, RelationToggles};

    #[test]
    fn adjoint_kappa_fails_mixed_relation() {
        let rs = RootSystem::from_label("A", 2).unwrap();
        let rep = adjoint_kappa_rep(&rs).unwrap();
        let r = flatness_relations_check(&rep, &rs, RelationToggles::ALL).unwrap();
        let fam3 = r.relations.iter().find(|f| f.family == 3).unwrap();
        assert!(fam3.offender.is_some());
        assert!(r.relations.iter().find(|f| f.family == 5).unwrap().passed());
        // Every κ_α annihilates the central element Σ E_ii.
        let mut h = CMat::zeros(9, 1);
        for i in 0..3 {
            h[(i * 3 + i, 0)] = Complex64::new(1.0, 0.0);
        }
        for t in &rep.t {
            assert!(max_abs(&(t * &h)) < 1e-14);
        }
    }
}
