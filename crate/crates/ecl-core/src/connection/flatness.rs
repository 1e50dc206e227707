//! Algebraic flatness certificate: the relations among `t_α`, `x(u)`, `y(u)`
//! under which the universal KZB connection is flat, checked as matrix
//! identities on a [`ConnRep`].
//!
//! 1. `[t_α, Σ_{β∈Ψ⁺} t_β] = 0` for every rank-2 subsystem `Ψ` and `α ∈ Ψ⁺`;
//! 2. `[x(u), x(v)] = [y(u), y(v)] = 0`;
//! 3. `[y(u), x(v)] = Σ_{γ>0} (v,γ)(u,γ) t_γ`;
//! 4. `[t_α, x(u)] = [t_α, y(u)] = 0` whenever `(α, u) = 0`;
//! 5. Weyl equivariance `s_α t_γ s_α = t_{s_α γ}`, `s_α x(u) s_α = x(s_α u)`,
//!    `s_α y(u) s_α = y(s_α u)`, with `s_α² = 1`.
//!
//! `u, v` run over the simple roots (a basis of the Cartan), and for (4)
//! over the projections of the simple roots orthogonal to `α`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use super::{commutator, max_abs, rat_to_c, rat_vec_to_c, CMat, ConnRep};
use crate::error::{Error, Result};
use crate::rootsys::{Rat, RootSystem};

/// Absolute tolerance, scaled by the size of the matrices involved.
pub const FLATNESS_TOL: f64 = 1e-10;

/// Which relation families to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationToggles(pub [bool; 5]);

impl RelationToggles {
    pub const ALL: RelationToggles = RelationToggles([true; 5]);
}

impl Default for RelationToggles {
    fn default() -> Self {
        RelationToggles::ALL
    }
}

/// Outcome of one relation family.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationResult {
    /// Family number 1–5.
    pub family: usize,
    pub name: String,
    pub instances: usize,
    pub max_residual: f64,
    /// `None` when checked; the reason otherwise.
    pub skipped: Option<String>,
    /// First instance exceeding tolerance.
    pub offender: Option<String>,
}

impl RelationResult {
    pub fn passed(&self) -> bool {
        self.skipped.is_some() || self.offender.is_none()
    }
}

/// Report over all relation families.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatnessReport {
    pub label: String,
    pub relations: Vec<RelationResult>,
}

impl FlatnessReport {
    /// Every checked family holds.
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationResult::passed)
    }

    /// Names of skipped families.
    pub fn skipped(&self) -> Vec<String> {
        self.relations
            .iter()
            .filter(|r| r.skipped.is_some())
            .map(|r| r.name.clone())
            .collect()
    }

    /// Fails with a capability error if any family was skipped for lack of
    /// data.
    pub fn require_complete(&self) -> Result<()> {
        let s = self.skipped();
        if s.is_empty() {
            Ok(())
        } else {
            Err(Error::Capability(format!("relations skipped: {}", s.join(", "))))
        }
    }
}

struct Family {
    result: RelationResult,
    tol_scale: f64,
}

impl Family {
    fn new(family: usize, name: &str, tol_scale: f64) -> Family {
        Family {
            result: RelationResult {
                family,
                name: name.to_string(),
                instances: 0,
                max_residual: 0.0,
                skipped: None,
                offender: None,
            },
            tol_scale,
        }
    }

    fn skipped(family: usize, name: &str, why: &str) -> RelationResult {
        let mut f = Family::new(family, name, 1.0);
        f.result.skipped = Some(why.to_string());
        f.result
    }

    fn record(&mut self, residual: f64, what: impl FnOnce() -> String) {
        self.result.instances += 1;
        self.result.max_residual = self.result.max_residual.max(residual);
        if residual > FLATNESS_TOL * self.tol_scale && self.result.offender.is_none() {
            self.result.offender = Some(what());
        }
    }
}

fn vec_label(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(|r| format!("{r}")).collect();
    format!("({})", parts.join(","))
}

/// Rank-2 subsystems as sets of positive-root indices.
fn rank_two_subsystems(rs: &RootSystem) -> Vec<Vec<usize>> {
    let pos = rs.positive_roots();
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            let (ra, rb) = (&pos[a], &pos[b]);
            let gab = [[rs.ip(ra, ra), rs.ip(ra, rb)], [rs.ip(rb, ra), rs.ip(rb, rb)]];
            if gab[0][0] * gab[1][1] - gab[0][1] * gab[1][0] == Rat::zero() {
                continue;
            }
            let members: Vec<usize> = (0..pos.len())
                .filter(|&g| {
                    let rg = &pos[g];
                    let m = [
                        [gab[0][0], gab[0][1], rs.ip(ra, rg)],
                        [gab[1][0], gab[1][1], rs.ip(rb, rg)],
                        [rs.ip(rg, ra), rs.ip(rg, rb), rs.ip(rg, rg)],
                    ];
                    det3(&m) == Rat::zero()
                })
                .collect();
            out.insert(members);
        }
    }
    out.into_iter().collect()
}

fn det3(m: &[[Rat; 3]; 3]) -> Rat {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn scale_of(ms: &[CMat]) -> f64 {
    ms.iter().fold(1.0, |a, m| a.max(max_abs(m)))
}

/// Checks the enabled relation families on `rep`.
///
/// Families needing an absent map are reported as skipped rather than
/// failed; [`FlatnessReport::require_complete`] turns that into an error.
pub fn flatness_relations_check(rep: &ConnRep, rs: &RootSystem, toggles: RelationToggles) -> Result<FlatnessReport> {
    rep.validate_shapes()?;
    if rep.t.len() != rs.positive_roots().len() || rep.ambient != rs.ambient_dim() {
        return Err(Error::Domain(format!(
            "representation {} does not match the root system",
            rep.label
        )));
    }
    let pos = rs.positive_roots();
    let simple: Vec<Vec<Rat>> = rs.simple_roots().iter().map(|s| s.to_rat()).collect();
    let simple_c: Vec<Vec<Complex64>> = simple.iter().map(|v| rat_vec_to_c(v)).collect();
    let mut all = rep.t.clone();
    for m in [&rep.x, &rep.y].into_iter().flatten() {
        all.extend(m.iter().cloned());
    }
    let s = scale_of(&all);
    let s2 = s * s;
    let mut relations = Vec::new();

    if toggles.0[0] {
        let mut f = Family::new(1, "(1) [t_a, sum over rank-2 subsystem] = 0", s2);
        for sub in rank_two_subsystems(rs) {
            let mut total = CMat::zeros(rep.dim, rep.dim);
            for &g in &sub {
                total += &rep.t[g];
            }
            for &a in &sub {
                let r = max_abs(&commutator(&rep.t[a], &total));
                f.record(r, || format!("alpha = {:?} in subsystem {:?}", pos[a].0, sub));
            }
        }
        relations.push(f.result);
    }

    let have_xy = rep.x.is_some() && rep.y.is_some();
    let missing = || {
        let mut v = Vec::new();
        if rep.x.is_none() {
            v.push("x");
        }
        if rep.y.is_none() {
            v.push("y");
        }
        format!("map {} absent", v.join(" and "))
    };
    if toggles.0[1] {
        if have_xy {
            let mut f = Family::new(2, "(2) [x(u),x(v)] = [y(u),y(v)] = 0", s2);
            for (i, u) in simple_c.iter().enumerate() {
                for (j, v) in simple_c.iter().enumerate().skip(i + 1) {
                    let (xu, xv) = (rep.x_of(u).expect("x"), rep.x_of(v).expect("x"));
                    let (yu, yv) = (rep.y_of(u).expect("y"), rep.y_of(v).expect("y"));
                    let r = max_abs(&commutator(&xu, &xv)).max(max_abs(&commutator(&yu, &yv)));
                    f.record(r, || {
                        format!("(u,v) = ({}, {})", vec_label(&simple[i]), vec_label(&simple[j]))
                    });
                }
            }
            relations.push(f.result);
        } else {
            relations.push(Family::skipped(2, "(2) [x(u),x(v)] = [y(u),y(v)] = 0", &missing()));
        }
    }

    if toggles.0[2] {
        let name = "(3) [y(u),x(v)] = sum (v,g)(u,g) t_g";
        if have_xy {
            let mut f = Family::new(3, name, s2);
            for (i, u) in simple.iter().enumerate() {
                for (j, v) in simple.iter().enumerate() {
                    let lhs = commutator(&rep.y_of(&simple_c[i]).expect("y"), &rep.x_of(&simple_c[j]).expect("x"));
                    let mut rhs = CMat::zeros(rep.dim, rep.dim);
                    for (g, tg) in pos.iter().zip(&rep.t) {
                        let gq = g.to_rat();
                        let w = rs.ip_rat(v, &gq) * rs.ip_rat(u, &gq);
                        if !w.is_zero() {
                            rhs += tg * rat_to_c(w);
                        }
                    }
                    f.record(max_abs(&(lhs - rhs)), || {
                        format!("(u,v) = ({}, {})", vec_label(u), vec_label(v))
                    });
                }
            }
            relations.push(f.result);
        } else {
            relations.push(Family::skipped(3, name, &missing()));
        }
    }

    if toggles.0[3] {
        let name = "(4) [t_a, x(u)] = [t_a, y(u)] = 0 for (a,u) = 0";
        if have_xy {
            let mut f = Family::new(4, name, s2);
            for (alpha, ta) in pos.iter().zip(&rep.t) {
                let aq = alpha.to_rat();
                let aa = rs.ip_rat(&aq, &aq);
                for sroot in &simple {
                    let k = rs.ip_rat(sroot, &aq) / aa;
                    let u: Vec<Rat> = sroot.iter().zip(&aq).map(|(s, a)| *s - k * *a).collect();
                    if u.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let uc = rat_vec_to_c(&u);
                    let r = max_abs(&commutator(ta, &rep.x_of(&uc).expect("x")))
                        .max(max_abs(&commutator(ta, &rep.y_of(&uc).expect("y"))));
                    f.record(r, || format!("alpha = {:?}, u = {}", alpha.0, vec_label(&u)));
                }
            }
            relations.push(f.result);
        } else {
            relations.push(Family::skipped(4, name, &missing()));
        }
    }

    if toggles.0[4] {
        let name = "(5) Weyl equivariance";
        match &rep.weyl {
            None => relations.push(Family::skipped(5, name, "Weyl matrices absent")),
            Some(w) => {
                let mut f = Family::new(5, name, s2.max(s));
                let id = CMat::identity(rep.dim, rep.dim);
                for (alpha, sa) in pos.iter().zip(w) {
                    f.record(max_abs(&(sa * sa - &id)), || {
                        format!("s_alpha^2 != 1 for alpha = {:?}", alpha.0)
                    });
                    for (gamma, tg) in pos.iter().zip(&rep.t) {
                        let image = rs.reflect_root(alpha, gamma);
                        let target = rep.t_of(rs, &image)?;
                        f.record(max_abs(&(sa * tg * sa - target)), || {
                            format!("t: alpha = {:?}, gamma = {:?}", alpha.0, gamma.0)
                        });
                    }
                    for (u, uc) in simple.iter().zip(&simple_c) {
                        let su = rat_vec_to_c(&rs.reflect(alpha, u)?);
                        for (name, lhs, rhs) in [("x", rep.x_of(uc), rep.x_of(&su)), ("y", rep.y_of(uc), rep.y_of(&su))]
                        {
                            if let (Some(l), Some(r)) = (lhs, rhs) {
                                f.record(max_abs(&(sa * l * sa - r)), || {
                                    format!("{name}: alpha = {:?}, u = {}", alpha.0, vec_label(u))
                                });
                            }
                        }
                    }
                }
                relations.push(f.result);
            }
        }
    }

    Ok(FlatnessReport {
        label: rep.label.clone(),
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsystem_counts() {
        // A_2 has one rank-2 subsystem (itself); A_3 has four A_2's and three
        // A_1×A_1's.
        let a2 = RootSystem::from_label("A", 2).unwrap();
        assert_eq!(rank_two_subsystems(&a2).len(), 1);
        let a3 = RootSystem::from_label("A", 3).unwrap();
        let subs = rank_two_subsystems(&a3);
        assert_eq!(subs.iter().filter(|s| s.len() == 3).count(), 4);
        assert_eq!(subs.iter().filter(|s| s.len() == 2).count(), 3);
    }

    #[test]
    fn zero_rep_passes() {
        let rs = RootSystem::from_label("A", 2).unwrap();
        let r = flatness_relations_check(&ConnRep::zero(&rs, 3), &rs, RelationToggles::ALL).unwrap();
        assert!(r.passed());
        assert_eq!(r.skipped(), alloc::vec!["(5) Weyl equivariance".to_string()]);
    }
}
