//! Exact rational constants: Bernoulli numbers and π-power multiples.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Bernoulli numbers `B_0, …, B_m` for the generating function
/// `x/(e^x − 1) = Σ B_r x^r / r!` (so `B_1 = −1/2`).
///
/// Uses the recurrence `Σ_{j=0}^{r} C(r+1, j) B_j = 0` for `r ≥ 1`.
pub fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    b.push(BigRational::one());
    for r in 1..=m {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(r+1, j), starting at j = 0
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(r + 1 - j) / BigInt::from(j + 1);
        }
        // Here binom = C(r+1, r) = r+1.
        b.push(-acc / BigRational::from_integer(binom));
    }
    b
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// A real number `coeff · π^power` with an exact rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMultiple {
    pub coeff: BigRational,
    pub pi_power: u32,
}

impl PiMultiple {
    /// Floating-point value.
    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.numer().to_f64().unwrap_or(f64::NAN) / self.coeff.denom().to_f64().unwrap_or(f64::NAN);
        c * crate::math::powi(core::f64::consts::PI, self.pi_power as i32)
    }
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·π^{}", self.coeff, self.pi_power)
    }
}

/// Coefficients `c_1, c_3, …, c_{2m+1}` of
/// `πi(e^{2πix}+1)/(e^{2πix}−1) − 1/x = Σ c_{2n+1} x^{2n+1}`.
///
/// The left side equals `π·cot(πx) − 1/x`, whose expansion in Bernoulli
/// numbers gives `c_{2n+1} = (−1)^{n+1} 2^{2n+2} B_{2n+2} π^{2n+2} / (2n+2)!`.
pub fn trig_c_coeffs(m: usize) -> Vec<PiMultiple> {
    let b = bernoulli(2 * m + 2);
    (0..=m)
        .map(|n| {
            let k = 2 * n + 2;
            let sign = if n % 2 == 0 { -1 } else { 1 };
            let num = BigInt::from(sign) * (BigInt::one() << k);
            PiMultiple {
                coeff: BigRational::from_integer(num) * &b[k] / BigRational::from_integer(factorial(k)),
                pi_power: k as u32,
            }
        })
        .collect()
}

/// Coefficients `a_0, a_2, …, a_{2m}` with
/// `a_{2n} = −(2n+1) B_{2n+2} (2πi)^{2n+2} / (2n+2)!`, a real multiple of
/// `π^{2n+2}` because `i^{2n+2} = (−1)^{n+1}`.
pub fn a2n_coeffs(m: usize) -> Vec<PiMultiple> {
    let b = bernoulli(2 * m + 2);
    (0..=m)
        .map(|n| {
            let k = 2 * n + 2;
            let i_pow = if n % 2 == 0 { -1 } else { 1 };
            let num = BigInt::from(-(2 * n as i64 + 1) * i_pow) * (BigInt::one() << k);
            PiMultiple {
                coeff: BigRational::from_integer(num) * &b[k] / BigRational::from_integer(factorial(k)),
                pi_power: k as u32,
            }
        })
        .collect()
}

/// `C(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for j in 0..k {
        r = r * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    r
}

/// Checks `Σ_{m=0}^{n} C(m, j)·C(n−m, k−j) = C(n+1, k+1)` for all
/// `0 ≤ j ≤ k ≤ n ≤ bound`; returns the first failing `(j, k, n)`.
pub fn binomial_identity_counterexample(bound: usize) -> Option<(usize, usize, usize)> {
    for n in 0..=bound {
        for k in 0..=n {
            for j in 0..=k {
                let lhs = (0..=n).fold(BigInt::zero(), |acc, m| {
                    let right = if k - j <= n - m {
                        binomial(n - m, k - j)
                    } else {
                        BigInt::zero()
                    };
                    acc + binomial(m, j) * right
                });
                if lhs != binomial(n + 1, k + 1) {
                    return Some((j, k, n));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 6), BigInt::zero());
    }
}
