//! Concrete one-forms for transport.

use num_complex::Complex64;

use super::FormEvaluator;
use crate::connection::{assemble_kzb_form, root_value, CMat, ConnRep, Kernel};
use crate::elliptic::{ThetaEngine, DEFAULT_TRUNCATION};
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;

/// The zero form on a trivial bundle.
#[derive(Debug, Clone, Copy)]
pub struct ZeroForm {
    pub dim: usize,
    pub ambient: usize,
}

impl FormEvaluator for ZeroForm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn ambient(&self) -> usize {
        self.ambient
    }

    fn eval(&self, _z: &[Complex64], _tau: Complex64, _w: &[Complex64]) -> Result<CMat> {
        Ok(CMat::zeros(self.dim, self.dim))
    }

    fn clearance(&self, _z: &[Complex64], _tau: Complex64) -> f64 {
        f64::INFINITY
    }
}

/// The scalar form `c·(θ'/θ)(z) dz` on `C`; its horizontal sections are
/// `θ(z)^c`.
#[derive(Debug, Clone, Copy)]
pub struct ScalarLogDerivForm {
    pub c: Complex64,
    pub truncation: usize,
}

impl ScalarLogDerivForm {
    pub fn new(c: Complex64) -> ScalarLogDerivForm {
        ScalarLogDerivForm {
            c,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

impl FormEvaluator for ScalarLogDerivForm {
    fn dim(&self) -> usize {
        1
    }

    fn ambient(&self) -> usize {
        1
    }

    fn eval(&self, z: &[Complex64], tau: Complex64, w: &[Complex64]) -> Result<CMat> {
        let e = ThetaEngine::new(tau, self.truncation)?;
        let v = e.theta_logderiv(z[0])? * self.c * w[0];
        Ok(CMat::from_element(1, 1, v))
    }

    fn clearance(&self, z: &[Complex64], tau: Complex64) -> f64 {
        ThetaEngine::new(tau, self.truncation).map_or(0.0, |e| e.nearest_lattice_point(z[0]).1)
    }
}

/// The universal KZB form evaluated on a finite-dimensional representation.
#[derive(Debug, Clone)]
pub struct KzbForm {
    pub rep: ConnRep,
    pub rs: RootSystem,
    pub truncation: usize,
    pub ad_order: usize,
}

impl KzbForm {
    pub fn new(rep: ConnRep, rs: RootSystem, ad_order: usize) -> Result<KzbForm> {
        rep.validate_shapes()?;
        if rep.ambient != rs.ambient_dim() || rep.t.len() != rs.positive_roots().len() {
            return Err(Error::Domain("representation does not match the root system".into()));
        }
        Ok(KzbForm {
            rep,
            rs,
            truncation: DEFAULT_TRUNCATION,
            ad_order,
        })
    }
}

impl FormEvaluator for KzbForm {
    fn dim(&self) -> usize {
        self.rep.dim
    }

    fn ambient(&self) -> usize {
        self.rs.ambient_dim()
    }

    fn eval(&self, z: &[Complex64], tau: Complex64, w: &[Complex64]) -> Result<CMat> {
        let e = ThetaEngine::new(tau, self.truncation)?;
        let f = assemble_kzb_form(&self.rep, &self.rs, z, Kernel::Elliptic(&e), self.ad_order)?;
        Ok(f.contract(w))
    }

    fn clearance(&self, z: &[Complex64], tau: Complex64) -> f64 {
        let Ok(e) = ThetaEngine::new(tau, self.truncation) else {
            return 0.0;
        };
        self.rs
            .positive_roots()
            .iter()
            .map(|a| e.nearest_lattice_point(root_value(a, z)).1)
            .fold(f64::INFINITY, f64::min)
    }
}
