//! Operator identities checked on a finite family of test states.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::op::DiffOp;
use super::ratfunc::{RatFunc, XExp, MAX_X};
use super::state::{MExp, PolyState, Shape, MAX_M};

/// Weight filter applied to test states (a pure function of `m`-exponents).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightPredicate {
    /// All row degrees `deg_a(m)` equal: zero weight for the `sl_k` Cartan.
    SlkZero,
    /// All column degrees `deg_i(m)` equal: zero weight for the `sl_n` Cartan.
    SlnZero,
    /// Every row degree `deg_a(m)` is 0 or 1: the subspace on which the
    /// operator model realizes the double current algebra exactly.
    RowsAtMostOne,
    /// No filter.
    None,
}

impl WeightPredicate {
    pub fn label(self) -> &'static str {
        match self {
            WeightPredicate::SlkZero => "slk_zero",
            WeightPredicate::SlnZero => "sln_zero",
            WeightPredicate::RowsAtMostOne => "rows_le1",
            WeightPredicate::None => "none",
        }
    }

    /// Whether the monomial passes the filter.
    pub fn accepts(self, shape: Shape, e: &MExp) -> bool {
        match self {
            WeightPredicate::None => true,
            WeightPredicate::RowsAtMostOne => (0..shape.k).all(|a| shape.row_degree(e, a) <= 1),
            WeightPredicate::SlkZero => {
                let d0 = shape.row_degree(e, 0);
                (1..shape.k).all(|a| shape.row_degree(e, a) == d0)
            }
            WeightPredicate::SlnZero => {
                let d0 = shape.col_degree(e, 0);
                (1..shape.n).all(|i| shape.col_degree(e, i) == d0)
            }
        }
    }
}

/// The family of test states: `m`-monomials of degree `≤ m_degree` times
/// `x`-monomials of degree `≤ x_degree`, optionally times one factor
/// `(x_a − x_b)^{−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TestFamily {
    pub m_degree: usize,
    pub x_degree: usize,
    pub inverse_factor: bool,
    /// Keep only `m`-monomials of exactly degree `m_degree` when set.
    pub homogeneous: bool,
}

impl TestFamily {
    /// Default family: `m`-degree ≤ 3, `x`-degree ≤ 2, one inverse difference.
    pub const DEFAULT: TestFamily = TestFamily {
        m_degree: 3,
        x_degree: 2,
        inverse_factor: true,
        homogeneous: false,
    };

    /// Pure `m`-monomials of degree ≤ `d` (no `x` dependence).
    pub fn m_only(d: usize) -> TestFamily {
        TestFamily {
            m_degree: d,
            x_degree: 0,
            inverse_factor: false,
            homogeneous: false,
        }
    }

    /// The weight-filtered states for a shape, in a deterministic order.
    pub fn states(&self, shape: Shape, weight: WeightPredicate) -> Vec<PolyState> {
        let monos: Vec<MExp> = m_monomials(shape.k * shape.n, self.m_degree)
            .into_iter()
            .filter(|e| !self.homogeneous || degree(e) == self.m_degree)
            .filter(|e| weight.accepts(shape, e))
            .collect();
        let xs = self.x_factors(shape.k);
        let mut out = Vec::with_capacity(monos.len() * xs.len());
        for e in &monos {
            for f in &xs {
                out.push(PolyState::term(*e, f.clone()));
            }
        }
        out
    }

    fn x_factors(&self, k: usize) -> Vec<RatFunc> {
        let mut polys = Vec::new();
        for e in x_monomials(k, self.x_degree) {
            polys.push(RatFunc::from_poly(super::ratfunc::XPoly::monomial(e)));
        }
        let mut out = polys.clone();
        if self.inverse_factor {
            for a in 0..k {
                for b in a + 1..k {
                    for p in &polys {
                        out.push(p.mul(&RatFunc::inv_diff(a, b)));
                    }
                }
            }
        }
        out
    }
}

fn degree(e: &MExp) -> usize {
    e.iter().map(|&v| v as usize).sum()
}

/// All exponent vectors over `vars` variables with total degree ≤ `d`.
fn m_monomials(vars: usize, d: usize) -> Vec<MExp> {
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_M];
    fn rec(pos: usize, vars: usize, left: usize, cur: &mut MExp, out: &mut Vec<MExp>) {
        if pos == vars {
            out.push(*cur);
            return;
        }
        for p in 0..=left {
            cur[pos] = p as u8;
            rec(pos + 1, vars, left - p, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, vars, d, &mut cur, &mut out);
    out.sort_by_key(|e| (degree(e), core::cmp::Reverse(*e)));
    out
}

fn x_monomials(k: usize, d: usize) -> Vec<XExp> {
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_X];
    fn rec(pos: usize, k: usize, left: usize, cur: &mut XExp, out: &mut Vec<XExp>) {
        if pos == k {
            out.push(*cur);
            return;
        }
        for p in 0..=left {
            cur[pos] = p as u8;
            rec(pos + 1, k, left - p, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, k, d, &mut cur, &mut out);
    out
}

/// Outcome of checking `lhs = rhs` on a test family.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub weight: WeightPredicate,
    pub states_tested: usize,
    pub states_skipped: usize,
    pub failures: usize,
    /// First failing state and its residual `(lhs − rhs)(state)`.
    pub counterexample: Option<(PolyState, PolyState)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Combines reports of several instances of one identity family.
    pub fn merge(name: &str, weight: WeightPredicate, parts: &[IdentityReport]) -> IdentityReport {
        let mut r = IdentityReport {
            name: name.into(),
            weight,
            states_tested: 0,
            states_skipped: 0,
            failures: 0,
            counterexample: None,
        };
        for p in parts {
            r.states_tested += p.states_tested;
            r.states_skipped += p.states_skipped;
            r.failures += p.failures;
            if r.counterexample.is_none() {
                r.counterexample = p.counterexample.clone();
            }
        }
        r
    }

    /// A one-line human-readable summary.
    pub fn summary(&self) -> String {
        format!(
            "{}: {} on {} states ({} filter){}",
            self.name,
            if self.passed() { "pass" } else { "FAIL" },
            self.states_tested,
            self.weight.label(),
            if self.passed() {
                String::new()
            } else {
                format!(", {} failing", self.failures)
            }
        )
    }
}

/// Applies `lhs − rhs` to every test state passing `weight`.
///
/// With the `std` feature the states are processed in parallel; the report is
/// identical either way (the first counterexample is the first in family
/// order).
pub fn check_identity(
    name: &str,
    lhs: &DiffOp,
    rhs: &DiffOp,
    shape: Shape,
    family: &TestFamily,
    weight: WeightPredicate,
) -> IdentityReport {
    let diff = lhs.sub(rhs);
    let states = family.states(shape, weight);
    let residuals = map_states(&states, &diff);
    let mut failures = 0;
    let mut counterexample = None;
    for (s, r) in states.iter().zip(residuals) {
        if !r.is_zero() {
            failures += 1;
            if counterexample.is_none() {
                counterexample = Some((s.clone(), r));
            }
        }
    }
    IdentityReport {
        name: name.into(),
        weight,
        states_tested: states.len(),
        states_skipped: 0,
        failures,
        counterexample,
    }
}

/// Checks that `op` annihilates the filtered test family.
pub fn check_annihilates(
    name: &str,
    op: &DiffOp,
    shape: Shape,
    family: &TestFamily,
    weight: WeightPredicate,
) -> IdentityReport {
    check_identity(name, op, &DiffOp::zero(), shape, family, weight)
}

#[cfg(feature = "std")]
fn map_states(states: &[PolyState], op: &DiffOp) -> Vec<PolyState> {
    use rayon::prelude::*;
    states.par_iter().map(|s| op.apply(s)).collect()
}

#[cfg(not(feature = "std"))]
fn map_states(states: &[PolyState], op: &DiffOp) -> Vec<PolyState> {
    states.iter().map(|s| op.apply(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let shape = Shape { k: 2, n: 4 };
        // C(8+3, 3) = 165 monomials, 6 x-monomials, one inverse pair.
        assert_eq!(TestFamily::DEFAULT.states(shape, WeightPredicate::None).len(), 165 * 12);
        // Column degrees all equal below degree 4 ⇒ constants only.
        assert_eq!(TestFamily::m_only(3).states(shape, WeightPredicate::SlnZero).len(), 1);
    }
}
