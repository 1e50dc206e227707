//! Differential operators as immutable expression trees.
//!
//! An operator is never normal-ordered; it is applied to states by walking
//! the tree, and two operators are compared by their action on test states.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ratfunc::{RatFunc, Q};
use super::state::{MExp, PolyState, MAX_M};

#[derive(Debug)]
enum Node {
    Zero,
    Scalar(Q),
    MulX(RatFunc),
    DerX(usize),
    MulM(usize),
    DerM(usize),
    /// `m_p ∂/∂m_q`.
    MDer(usize, usize),
    Sum(Vec<DiffOp>),
    Scale(Q, DiffOp),
    /// `A_0 ∘ A_1 ∘ … ∘ A_r`: the last factor acts first.
    Compose(Vec<DiffOp>),
    /// `[A, B] = A∘B − B∘A`.
    Commutator(DiffOp, DiffOp),
}

/// A differential operator on `C[h_k^reg] ⊗ C[M_{k,n}]`; cheap to clone.
#[derive(Debug, Clone)]
pub struct DiffOp(Arc<Node>);

impl DiffOp {
    fn node(n: Node) -> DiffOp {
        DiffOp(Arc::new(n))
    }

    pub fn zero() -> DiffOp {
        DiffOp::node(Node::Zero)
    }

    pub fn identity() -> DiffOp {
        DiffOp::scalar(Q::one())
    }

    pub fn scalar(c: Q) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero();
        }
        DiffOp::node(Node::Scalar(c))
    }

    /// Multiplication by a rational function of `x`.
    pub fn mul_x(f: RatFunc) -> DiffOp {
        if f.is_zero() {
            return DiffOp::zero();
        }
        DiffOp::node(Node::MulX(f))
    }

    /// `∂/∂x_a`.
    pub fn der_x(a: usize) -> DiffOp {
        DiffOp::node(Node::DerX(a))
    }

    /// Multiplication by the matrix variable with flat index `p`.
    pub fn mul_m(p: usize) -> DiffOp {
        assert!(p < MAX_M, "matrix variable index out of range");
        DiffOp::node(Node::MulM(p))
    }

    /// `∂/∂m_p`.
    pub fn der_m(p: usize) -> DiffOp {
        assert!(p < MAX_M, "matrix variable index out of range");
        DiffOp::node(Node::DerM(p))
    }

    /// `m_p ∂/∂m_q`.
    pub fn m_der(p: usize, q: usize) -> DiffOp {
        assert!(p < MAX_M && q < MAX_M, "matrix variable index out of range");
        DiffOp::node(Node::MDer(p, q))
    }

    pub fn is_trivially_zero(&self) -> bool {
        matches!(*self.0, Node::Zero)
    }

    /// Sum of operators (zeros are dropped).
    pub fn sum<I: IntoIterator<Item = DiffOp>>(ops: I) -> DiffOp {
        let v: Vec<DiffOp> = ops.into_iter().filter(|o| !o.is_trivially_zero()).collect();
        match v.len() {
            0 => DiffOp::zero(),
            1 => v.into_iter().next().expect("one element"),
            _ => DiffOp::node(Node::Sum(v)),
        }
    }

    pub fn add(&self, other: &DiffOp) -> DiffOp {
        DiffOp::sum([self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &DiffOp) -> DiffOp {
        self.add(&other.scale(-Q::one()))
    }

    pub fn scale(&self, c: Q) -> DiffOp {
        if c.is_zero() || self.is_trivially_zero() {
            return DiffOp::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        DiffOp::node(Node::Scale(c, self.clone()))
    }

    /// Scale by an integer ratio `num/den`.
    pub fn scale_ratio(&self, num: i64, den: i64) -> DiffOp {
        self.scale(Q::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Composition `self ∘ other` (`other` acts first).
    pub fn then(&self, other: &DiffOp) -> DiffOp {
        DiffOp::product([self.clone(), other.clone()])
    }

    /// Ordered product `A_0 ∘ A_1 ∘ …`.
    pub fn product<I: IntoIterator<Item = DiffOp>>(ops: I) -> DiffOp {
        let v: Vec<DiffOp> = ops.into_iter().collect();
        if v.iter().any(DiffOp::is_trivially_zero) {
            return DiffOp::zero();
        }
        match v.len() {
            0 => DiffOp::identity(),
            1 => v.into_iter().next().expect("one element"),
            _ => DiffOp::node(Node::Compose(v)),
        }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &DiffOp) -> DiffOp {
        if self.is_trivially_zero() || other.is_trivially_zero() {
            return DiffOp::zero();
        }
        DiffOp::node(Node::Commutator(self.clone(), other.clone()))
    }

    /// Symmetrised product `S(A, B) = AB + BA`.
    pub fn sym(&self, other: &DiffOp) -> DiffOp {
        self.then(other).add(&other.then(self))
    }

    /// `ad(self)^p (other)`.
    pub fn ad_pow(&self, p: usize, other: &DiffOp) -> DiffOp {
        (0..p).fold(other.clone(), |acc, _| self.commutator(&acc))
    }

    /// Applies the operator to a state.
    pub fn apply(&self, v: &PolyState) -> PolyState {
        if v.is_zero() {
            return PolyState::zero();
        }
        match &*self.0 {
            Node::Zero => PolyState::zero(),
            Node::Scalar(c) => v.scale(c),
            Node::MulX(f) => map_terms(v, |e, g| Some((*e, f.mul(g)))),
            Node::DerX(a) => map_terms(v, |e, g| Some((*e, g.derivative(*a)))),
            Node::MulM(p) => map_terms(v, |e, g| {
                let mut e2 = *e;
                e2[*p] += 1;
                Some((e2, g.clone()))
            }),
            Node::DerM(p) => map_terms(v, |e, g| {
                if e[*p] == 0 {
                    return None;
                }
                let mut e2 = *e;
                e2[*p] -= 1;
                Some((e2, g.scale(&Q::from_integer(BigInt::from(e[*p])))))
            }),
            Node::MDer(p, q) => map_terms(v, |e, g| {
                if e[*q] == 0 {
                    return None;
                }
                let mut e2 = *e;
                e2[*q] -= 1;
                e2[*p] += 1;
                Some((e2, g.scale(&Q::from_integer(BigInt::from(e[*q])))))
            }),
            Node::Sum(ops) => {
                let mut acc = PolyState::zero();
                for o in ops {
                    acc.add_assign(&o.apply(v));
                }
                acc
            }
            Node::Scale(c, o) => o.apply(v).scale(c),
            Node::Compose(ops) => {
                let mut cur = v.clone();
                for o in ops.iter().rev() {
                    cur = o.apply(&cur);
                    if cur.is_zero() {
                        break;
                    }
                }
                cur
            }
            Node::Commutator(a, b) => {
                let ab = a.apply(&b.apply(v));
                let ba = b.apply(&a.apply(v));
                ab.sub(&ba)
            }
        }
    }
}

fn map_terms<F>(v: &PolyState, f: F) -> PolyState
where
    F: Fn(&MExp, &RatFunc) -> Option<(MExp, RatFunc)>,
{
    let mut r = PolyState::zero();
    for (e, g) in v.terms() {
        if let Some((e2, g2)) = f(e, g) {
            r.add_term(e2, g2);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(pairs: &[(usize, u8)]) -> MExp {
        let mut e = [0u8; MAX_M];
        for &(i, p) in pairs {
            e[i] = p;
        }
        e
    }

    #[test]
    fn weyl_relation_in_m() {
        // [∂_0, m_0] = 1
        let c = DiffOp::der_m(0).commutator(&DiffOp::mul_m(0));
        let v = PolyState::term(mono(&[(0, 2), (1, 1)]), RatFunc::var(0));
        assert_eq!(c.apply(&v), v);
    }

    #[test]
    fn weyl_relation_in_x() {
        let c = DiffOp::der_x(1).commutator(&DiffOp::mul_x(RatFunc::var(1)));
        let v = PolyState::term(mono(&[(3, 1)]), RatFunc::inv_diff(0, 1));
        assert_eq!(c.apply(&v), v);
    }

    #[test]
    fn euler_counts_degree() {
        let euler = DiffOp::sum((0..4).map(|p| DiffOp::m_der(p, p)));
        let v = PolyState::term(mono(&[(0, 2), (3, 1)]), RatFunc::one());
        assert_eq!(euler.apply(&v), v.scale(&Q::from_integer(3.into())));
    }
}
