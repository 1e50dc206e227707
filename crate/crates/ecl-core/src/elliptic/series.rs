//! Truncated power series in one variable with complex coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

/// A power series `Σ_{j≤order} c_j x^j`, truncated at `order`.
///
/// All arithmetic truncates at the smaller order of the operands, so
/// products and quotients are exact to working precision up to that order.
#[derive(Debug, Clone, PartialEq)]
pub struct XSeries {
    coeffs: Vec<Complex64>,
}

impl XSeries {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> XSeries {
        XSeries {
            coeffs: vec![Complex64::zero(); order + 1],
        }
    }

    /// The constant series `c`.
    pub fn constant(c: Complex64, order: usize) -> XSeries {
        let mut s = XSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// A series from explicit coefficients; the order is `len − 1`.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> XSeries {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        XSeries { coeffs }
    }

    /// `e^{a x}` truncated at `order`.
    pub fn exp_linear(a: Complex64, order: usize) -> XSeries {
        let mut c = vec![Complex64::zero(); order + 1];
        let mut term = Complex64::new(1.0, 0.0);
        for (j, slot) in c.iter_mut().enumerate() {
            if j > 0 {
                term = term * a / j as f64;
            }
            *slot = term;
        }
        XSeries { coeffs: c }
    }

    /// Truncation order.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^j` (zero beyond the order).
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_else(Complex64::zero)
    }

    /// All coefficients.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Re-truncates at a lower order.
    pub fn truncate(&self, order: usize) -> XSeries {
        let n = (order + 1).min(self.coeffs.len());
        XSeries {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Complex64) -> XSeries {
        XSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Term-wise derivative; the order drops by one.
    pub fn derivative(&self) -> XSeries {
        if self.coeffs.len() == 1 {
            return XSeries::zero(0);
        }
        XSeries {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(j, c)| c * (j + 1) as f64)
                .collect(),
        }
    }

    /// Drops the constant term and divides by `x`; the order drops by one.
    pub fn shift_down(&self) -> XSeries {
        if self.coeffs.len() == 1 {
            return XSeries::zero(0);
        }
        XSeries {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Quotient `self / other`; requires a nonzero constant term in `other`.
    pub fn div(&self, other: &XSeries) -> Option<XSeries> {
        let c0 = other.coeff(0);
        if c0 == Complex64::zero() {
            return None;
        }
        let order = self.order().min(other.order());
        let mut q = vec![Complex64::zero(); order + 1];
        for j in 0..=order {
            let mut acc = self.coeffs[j];
            for i in 1..=j {
                acc -= other.coeffs[i] * q[j - i];
            }
            q[j] = acc / c0;
        }
        Some(XSeries { coeffs: q })
    }

    /// Evaluates the truncated series at `x`.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * x + c)
    }

    /// Largest coefficient modulus of `self − other`.
    pub fn max_diff(&self, other: &XSeries) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|j| (self.coeff(j) - other.coeff(j)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &XSeries {
    type Output = XSeries;
    fn add(self, rhs: &XSeries) -> XSeries {
        let order = self.order().min(rhs.order());
        XSeries {
            coeffs: (0..=order).map(|j| self.coeffs[j] + rhs.coeffs[j]).collect(),
        }
    }
}

impl Sub for &XSeries {
    type Output = XSeries;
    fn sub(self, rhs: &XSeries) -> XSeries {
        let order = self.order().min(rhs.order());
        XSeries {
            coeffs: (0..=order).map(|j| self.coeffs[j] - rhs.coeffs[j]).collect(),
        }
    }
}

impl Neg for &XSeries {
    type Output = XSeries;
    fn neg(self) -> XSeries {
        XSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &XSeries {
    type Output = XSeries;
    fn mul(self, rhs: &XSeries) -> XSeries {
        let order = self.order().min(rhs.order());
        let mut c = vec![Complex64::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if *a == Complex64::zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                c[i + j] += a * b;
            }
        }
        XSeries { coeffs: c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn geometric_series_by_division() {
        let one = XSeries::constant(c(1.0), 6);
        let den = XSeries::from_coeffs(vec![c(1.0), c(-1.0), c(0.0), c(0.0), c(0.0), c(0.0), c(0.0)]);
        let q = one.div(&den).unwrap();
        assert!(q.coeffs().iter().all(|x| (x - c(1.0)).norm() < 1e-15));
    }

    #[test]
    fn exp_times_exp() {
        let a = XSeries::exp_linear(c(0.7), 10);
        let b = XSeries::exp_linear(c(-0.7), 10);
        let p = &a * &b;
        assert!((p.coeff(0) - c(1.0)).norm() < 1e-15);
        assert!((1..=10).all(|j| p.coeff(j).norm() < 1e-14));
    }
}
