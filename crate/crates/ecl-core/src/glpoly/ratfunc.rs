//! Exact rational functions of `x_1, …, x_k` whose denominators are products
//! of the differences `x_a − x_b`.
//!
//! A [`RatFunc`] is stored as `N / ∏_{a<b} (x_a − x_b)^{e_ab}` with a
//! polynomial numerator `N` and reduced eagerly: no difference that occurs in
//! the denominator divides `N`.  The canonical form is unique, so equality is
//! structural.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest supported number of `x` variables.
pub const MAX_X: usize = 4;
/// Number of unordered pairs among [`MAX_X`] variables.
pub const MAX_PAIRS: usize = MAX_X * (MAX_X - 1) / 2;

/// Exponent vector of an `x`-monomial.
pub type XExp = [u8; MAX_X];

/// Exact rational number used for all coefficients.
pub type Q = BigRational;

/// Index of the pair `(a, b)`, `a < b`, in the denominator exponent array.
pub fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < MAX_X);
    // Pairs ordered (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
    a * (2 * MAX_X - a - 1) / 2 + (b - a - 1)
}

/// The pair `(a, b)` at a denominator index (inverse of [`pair_index`]).
pub fn pair_at(idx: usize) -> (usize, usize) {
    let mut i = 0;
    for a in 0..MAX_X {
        for b in a + 1..MAX_X {
            if i == idx {
                return (a, b);
            }
            i += 1;
        }
    }
    unreachable!("pair index out of range")
}

/// Polynomial in `x` with rational coefficients; zero terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct XPoly {
    terms: BTreeMap<XExp, Q>,
}

impl XPoly {
    pub fn zero() -> XPoly {
        XPoly::default()
    }

    pub fn constant(c: Q) -> XPoly {
        let mut p = XPoly::zero();
        p.add_term([0; MAX_X], c);
        p
    }

    pub fn one() -> XPoly {
        XPoly::constant(Q::one())
    }

    /// The monomial `x^e`.
    pub fn monomial(e: XExp) -> XPoly {
        let mut p = XPoly::zero();
        p.add_term(e, Q::one());
        p
    }

    /// The variable `x_a`.
    pub fn var(a: usize) -> XPoly {
        let mut e = [0; MAX_X];
        e[a] = 1;
        XPoly::monomial(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&XExp, &Q)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: XExp, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Q) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut r = XPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0u8; MAX_X];
                for i in 0..MAX_X {
                    e[i] = e1[i] + e2[i];
                }
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    /// `∂/∂x_a`.
    pub fn derivative(&self, a: usize) -> XPoly {
        let mut r = XPoly::zero();
        for (e, c) in &self.terms {
            if e[a] > 0 {
                let mut f = *e;
                f[a] -= 1;
                r.add_term(f, c * Q::from_integer(BigInt::from(e[a])));
            }
        }
        r
    }

    /// Multiplies by `(x_a − x_b)`.
    pub fn mul_diff(&self, a: usize, b: usize) -> XPoly {
        self.mul(&XPoly::var(a).add(&XPoly::var(b).scale(&-Q::one())))
    }

    /// Exact division by `(x_a − x_b)` if it divides, else `None`.
    ///
    /// Synthetic division in `x_a` with root `x_b`: writing `N = Σ P_i x_a^i`,
    /// the quotient digits satisfy `Q_{i−1} = P_i + x_b Q_i` and the remainder
    /// is `P_0 + x_b Q_0`.
    pub fn div_diff(&self, a: usize, b: usize) -> Option<XPoly> {
        if self.is_zero() {
            return Some(XPoly::zero());
        }
        let deg = self.terms.keys().map(|e| e[a]).max().unwrap_or(0) as usize;
        let mut by_power: Vec<XPoly> = alloc::vec![XPoly::zero(); deg + 1];
        for (e, c) in &self.terms {
            let mut f = *e;
            let p = f[a] as usize;
            f[a] = 0;
            by_power[p].add_term(f, c.clone());
        }
        let xb = XPoly::var(b);
        let mut quotient = XPoly::zero();
        let mut digit = XPoly::zero();
        for p in (1..=deg).rev() {
            digit = by_power[p].add(&xb.mul(&digit));
            let mut shift = [0u8; MAX_X];
            shift[a] = (p - 1) as u8;
            quotient = quotient.add(&digit.mul(&XPoly::monomial(shift)));
        }
        let remainder = by_power[0].add(&xb.mul(&digit));
        if remainder.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&v| v as usize).sum())
            .max()
            .unwrap_or(0)
    }
}

/// `N / ∏(x_a − x_b)^{e_ab}` in reduced form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RatFunc {
    den: [u8; MAX_PAIRS],
    num: XPoly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc::default()
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(XPoly::one())
    }

    pub fn constant(c: Q) -> RatFunc {
        RatFunc::from_poly(XPoly::constant(c))
    }

    pub fn from_poly(p: XPoly) -> RatFunc {
        RatFunc {
            den: [0; MAX_PAIRS],
            num: p,
        }
    }

    /// The variable `x_a`.
    pub fn var(a: usize) -> RatFunc {
        RatFunc::from_poly(XPoly::var(a))
    }

    /// `1/(x_a − x_b)` for `a ≠ b` (either order).
    pub fn inv_diff(a: usize, b: usize) -> RatFunc {
        assert!(a != b && a < MAX_X && b < MAX_X, "inv_diff needs distinct variables");
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let mut den = [0; MAX_PAIRS];
        den[pair_index(lo, hi)] = 1;
        RatFunc {
            den,
            num: XPoly::constant(Q::from_integer(BigInt::from(sign))),
        }
    }

    pub fn numerator(&self) -> &XPoly {
        &self.num
    }

    pub fn denominator_exponents(&self) -> &[u8; MAX_PAIRS] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Total power of inverse differences.
    pub fn pole_order(&self) -> usize {
        self.den.iter().map(|&e| e as usize).sum()
    }

    fn reduce(mut self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        for idx in 0..MAX_PAIRS {
            let (a, b) = pair_at(idx);
            while self.den[idx] > 0 {
                match self.num.div_diff(a, b) {
                    Some(q) => {
                        self.num = q;
                        self.den[idx] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// Numerator rewritten over a larger denominator `den ≥ self.den`.
    fn lift(&self, den: &[u8; MAX_PAIRS]) -> XPoly {
        let mut n = self.num.clone();
        for (idx, (&target, &have)) in den.iter().zip(self.den.iter()).enumerate() {
            let (a, b) = pair_at(idx);
            for _ in have..target {
                n = n.mul_diff(a, b);
            }
        }
        n
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = [0u8; MAX_PAIRS];
        for i in 0..MAX_PAIRS {
            den[i] = self.den[i].max(other.den[i]);
        }
        let num = self.lift(&den).add(&other.lift(&den));
        RatFunc { den, num }.reduce()
    }

    pub fn neg(&self) -> RatFunc {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            den: self.den,
            num: self.num.scale(c),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        let mut den = [0u8; MAX_PAIRS];
        for i in 0..MAX_PAIRS {
            den[i] = self.den[i] + other.den[i];
        }
        RatFunc {
            den,
            num: self.num.mul(&other.num),
        }
        .reduce()
    }

    /// `∂/∂x_a`, using `∂_a (x_p − x_q)^{−e} = −e·σ·(x_p − x_q)^{−e−1}` with
    /// `σ = +1` for `a = p`, `−1` for `a = q`.
    pub fn derivative(&self, a: usize) -> RatFunc {
        let mut r = RatFunc {
            den: self.den,
            num: self.num.derivative(a),
        }
        .reduce();
        for idx in 0..MAX_PAIRS {
            let e = self.den[idx];
            if e == 0 {
                continue;
            }
            let (p, q) = pair_at(idx);
            let sigma: i64 = if a == p {
                1
            } else if a == q {
                -1
            } else {
                continue;
            };
            let mut den = self.den;
            den[idx] += 1;
            let term = RatFunc {
                den,
                num: self.num.scale(&Q::from_integer(BigInt::from(-(e as i64) * sigma))),
            }
            .reduce();
            r = r.add(&term);
        }
        r
    }

    /// Largest absolute numerator coefficient (a size measure for reports).
    pub fn max_abs_coeff(&self) -> Q {
        self.num
            .terms()
            .map(|(_, c)| c.abs())
            .fold(Q::zero(), |a, b| if b > a { b } else { a })
    }
}

impl fmt::Display for XPoly {
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
            write!(f, "({c})")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.num)?;
        for (idx, &e) in self.den.iter().enumerate() {
            if e > 0 {
                let (a, b) = pair_at(idx);
                write!(f, "/(x{}-x{})^{}", a + 1, b + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn pair_indexing_roundtrips() {
        for idx in 0..MAX_PAIRS {
            let (a, b) = pair_at(idx);
            assert_eq!(pair_index(a, b), idx);
        }
    }

    #[test]
    fn difference_over_itself_is_one() {
        let d = RatFunc::var(0).sub(&RatFunc::var(1));
        assert_eq!(d.mul(&RatFunc::inv_diff(0, 1)), RatFunc::one());
        assert_eq!(d.mul(&RatFunc::inv_diff(1, 0)), RatFunc::constant(q(-1)));
    }

    #[test]
    fn partial_fractions_cancel() {
        // 1/((x1−x2)(x1−x3)) + 1/((x2−x1)(x2−x3)) + 1/((x3−x1)(x3−x2)) = 0
        let t1 = RatFunc::inv_diff(0, 1).mul(&RatFunc::inv_diff(0, 2));
        let t2 = RatFunc::inv_diff(1, 0).mul(&RatFunc::inv_diff(1, 2));
        let t3 = RatFunc::inv_diff(2, 0).mul(&RatFunc::inv_diff(2, 1));
        assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn derivative_of_inverse_difference() {
        let f = RatFunc::inv_diff(0, 1);
        let g = f.derivative(0);
        assert_eq!(g, f.mul(&f).neg());
        assert_eq!(f.derivative(1), f.mul(&f));
    }
}
