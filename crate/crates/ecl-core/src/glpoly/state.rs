//! Elements of `C[h_k^reg] ⊗ C[M_{k,n}]`: finite sums of `m`-monomials with
//! rational-function coefficients.

use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::Zero;

use super::ratfunc::{RatFunc, Q};

/// Largest supported number of matrix variables `m_{a,i}` (`k·n`).
pub const MAX_M: usize = 24;

/// Exponent vector of an `m`-monomial; variable `m_{a,i}` sits at `a·n + i`.
pub type MExp = [u8; MAX_M];

/// Shape `(k, n)` of the matrix space `M_{k,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub k: usize,
    pub n: usize,
}

impl Shape {
    /// Flat index of `m_{a,i}` (0-based).
    pub fn var(&self, a: usize, i: usize) -> usize {
        debug_assert!(a < self.k && i < self.n);
        a * self.n + i
    }

    /// Row degree `deg_a` of a monomial (the `gl_k` weight component).
    pub fn row_degree(&self, e: &MExp, a: usize) -> usize {
        (0..self.n).map(|i| e[self.var(a, i)] as usize).sum()
    }

    /// Column degree `deg_i` of a monomial (the `gl_n` weight component).
    pub fn col_degree(&self, e: &MExp, i: usize) -> usize {
        (0..self.k).map(|a| e[self.var(a, i)] as usize).sum()
    }
}

/// A finite sum `Σ f_m(x)·m^e`; zero is the empty map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyState {
    terms: BTreeMap<MExp, RatFunc>,
}

impl PolyState {
    pub fn zero() -> PolyState {
        PolyState::default()
    }

    /// The single term `f·m^e`.
    pub fn term(e: MExp, f: RatFunc) -> PolyState {
        let mut s = PolyState::zero();
        s.add_term(e, f);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MExp, &RatFunc)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, e: MExp, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&f);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, f);
            }
        }
    }

    pub fn add_assign(&mut self, other: &PolyState) {
        for (e, f) in &other.terms {
            self.add_term(*e, f.clone());
        }
    }

    pub fn add(&self, other: &PolyState) -> PolyState {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn scale(&self, c: &Q) -> PolyState {
        if c.is_zero() {
            return PolyState::zero();
        }
        PolyState {
            terms: self.terms.iter().map(|(e, f)| (*e, f.scale(c))).collect(),
        }
    }

    pub fn sub(&self, other: &PolyState) -> PolyState {
        self.add(&other.scale(&-Q::from_integer(1.into())))
    }

    /// Largest `m`-degree present.
    pub fn max_m_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&v| v as usize).sum())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for PolyState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·m{i}")?,
                    _ => write!(f, "·m{i}^{p}")?,
                }
            }
        }
        Ok(())
    }
}
