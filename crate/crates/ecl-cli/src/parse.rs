//! Parsing of numeric command-line values.

use std::str::FromStr;

use ecl_core::glpoly::Q;
use ecl_core::Error;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// Parses `a+bi`, `a`, `bi`, `-0.4+0.9i`, `1e-3-2i` and similar.
pub fn complex(s: &str) -> Result<Complex64, Error> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let z = Complex64::from_str(&t).map_err(|_| Error::Domain(format!("cannot parse complex number '{s}'")))?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("complex number '{s}' is not finite")));
    }
    Ok(z)
}

/// Parses a modular parameter and checks `Im τ > 0`.
pub fn tau(s: &str) -> Result<Complex64, Error> {
    let t = complex(s)?;
    if !(t.im > 0.0) {
        return Err(Error::Domain(format!("Im(tau) must be positive, got {}", t.im)));
    }
    Ok(t)
}

/// Parses a comma-separated list of complex numbers.
pub fn point(s: &str) -> Result<Vec<Complex64>, Error> {
    s.split(',').map(complex).collect()
}

/// Parses an exact rational `p/q` or integer.
pub fn rational(s: &str) -> Result<Q, Error> {
    let q = Q::from_str(s.trim()).map_err(|_| Error::Domain(format!("cannot parse rational '{s}'")))?;
    Ok(q)
}

/// A complex number or an exact rational `p/q` (converted to floating point).
pub fn scalar(s: &str) -> Result<Complex64, Error> {
    if s.contains('/') {
        Ok(Complex64::new(rational_to_f64(&rational(s)?), 0.0))
    } else {
        complex(s)
    }
}

pub fn rational_to_f64(q: &Q) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// `[re, im]` for JSON output.
pub fn c_json(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("0.3+1.1i").unwrap(), Complex64::new(0.3, 1.1));
        assert_eq!(complex("-0.4+0.9i").unwrap(), Complex64::new(-0.4, 0.9));
        assert_eq!(complex("20i").unwrap(), Complex64::new(0.0, 20.0));
        assert_eq!(complex("1e-3-2i").unwrap(), Complex64::new(1e-3, -2.0));
        assert_eq!(complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert!(complex("abc").is_err());
        assert!(tau("0.3-1.1i").is_err());
        assert!(tau("0.3").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(rational("2/3").unwrap(), Q::new(2.into(), 3.into()));
        assert!(rational("2/0").is_err());
        assert!(rational("x").is_err());
    }
}
