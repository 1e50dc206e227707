//! Numerical parallel transport of matrix-valued one-forms.
//!
//! Along a path `γ: [0,1] → C^N` (at fixed `τ`) the horizontal section with
//! `F(0) = I` solves the linear matrix ODE
//!
//! ```text
//! F'(t) = A(γ(t))(γ'(t)) · F(t),
//! ```
//!
//! integrated with the embedded Dormand–Prince 5(4) pair under the control
//! `‖y₅ − y₄‖ ≤ tol · h · max(1, |γ'|)` per step.  Segment transports are
//! composed in path order (later segments act on the left).

mod forms;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt::Write as _;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::connection::{max_abs, CMat};
use crate::error::{Error, Result};

pub use forms::{KzbForm, ScalarLogDerivForm, ZeroForm};

/// A matrix-valued one-form that can be evaluated pointwise.
pub trait FormEvaluator: Sync {
    /// Fiber dimension.
    fn dim(&self) -> usize;
    /// Number of coordinates of `z`.
    fn ambient(&self) -> usize;
    /// `A(z)(w)` at modular parameter `τ`.
    fn eval(&self, z: &[Complex64], tau: Complex64, w: &[Complex64]) -> Result<CMat>;
    /// Distance from `z` to the nearest singular divisor, in
    /// lattice-normalised units (`f64::INFINITY` when the form is regular).
    fn clearance(&self, z: &[Complex64], tau: Complex64) -> f64;
}

/// One smooth piece of a path.
#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    /// `from + t(to − from)`.
    Line { from: Vec<Complex64>, to: Vec<Complex64> },
    /// `center + radius·e^{i(start + t·sweep)}·direction`.
    Arc {
        center: Vec<Complex64>,
        direction: Vec<Complex64>,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Segment {
    pub fn ambient(&self) -> usize {
        match self {
            Segment::Line { from, .. } => from.len(),
            Segment::Arc { center, .. } => center.len(),
        }
    }

    pub fn point(&self, t: f64) -> Vec<Complex64> {
        match self {
            Segment::Line { from, to } => from.iter().zip(to).map(|(a, b)| a + (b - a) * t).collect(),
            Segment::Arc {
                center,
                direction,
                radius,
                start,
                sweep,
            } => {
                let e = Complex64::from_polar(*radius, start + t * sweep);
                center.iter().zip(direction).map(|(c, d)| c + d * e).collect()
            }
        }
    }

    pub fn velocity(&self, t: f64) -> Vec<Complex64> {
        match self {
            Segment::Line { from, to } => from.iter().zip(to).map(|(a, b)| b - a).collect(),
            Segment::Arc {
                direction,
                radius,
                start,
                sweep,
                ..
            } => {
                let e = Complex64::from_polar(*radius, start + t * sweep) * Complex64::new(0.0, *sweep);
                direction.iter().map(|d| d * e).collect()
            }
        }
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Segment {
        match self {
            Segment::Line { from, to } => Segment::Line {
                from: to.clone(),
                to: from.clone(),
            },
            Segment::Arc {
                center,
                direction,
                radius,
                start,
                sweep,
            } => Segment::Arc {
                center: center.clone(),
                direction: direction.clone(),
                radius: *radius,
                start: start + sweep,
                sweep: -sweep,
            },
        }
    }

    fn describe(&self, out: &mut String) {
        let vec = |out: &mut String, v: &[Complex64]| {
            for z in v {
                let _ = write!(out, "{:016x}{:016x}", z.re.to_bits(), z.im.to_bits());
            }
            out.push(';');
        };
        match self {
            Segment::Line { from, to } => {
                out.push_str("line:");
                vec(out, from);
                vec(out, to);
            }
            Segment::Arc {
                center,
                direction,
                radius,
                start,
                sweep,
            } => {
                out.push_str("arc:");
                vec(out, center);
                vec(out, direction);
                let _ = write!(
                    out,
                    "{:016x}{:016x}{:016x};",
                    radius.to_bits(),
                    start.to_bits(),
                    sweep.to_bits()
                );
            }
        }
    }
}

/// A piecewise smooth path at fixed `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub tau: Complex64,
    pub segments: Vec<Segment>,
}

/// Tolerance on the mismatch between consecutive segment endpoints.
pub const JOIN_TOL: f64 = 1e-12;

impl Path {
    /// Validates dimensions and continuity.
    pub fn new(tau: Complex64, segments: Vec<Segment>) -> Result<Path> {
        let Some(first) = segments.first() else {
            return Err(Error::Domain("a path needs at least one segment".to_string()));
        };
        let n = first.ambient();
        for (i, s) in segments.iter().enumerate() {
            if s.ambient() != n {
                return Err(Error::Domain(format!("segment {i} has the wrong dimension")));
            }
            if let Segment::Arc { direction, radius, .. } = s {
                if direction.len() != n || !(*radius > 0.0) {
                    return Err(Error::Domain(format!("segment {i} is a degenerate arc")));
                }
            }
        }
        for (i, w) in segments.windows(2).enumerate() {
            let (a, b) = (w[0].point(1.0), w[1].point(0.0));
            let gap = a.iter().zip(&b).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
            if gap > JOIN_TOL {
                return Err(Error::Domain(format!(
                    "segments {i} and {} do not join (gap {gap:.3e})",
                    i + 1
                )));
            }
        }
        Ok(Path { tau, segments })
    }

    pub fn ambient(&self) -> usize {
        self.segments[0].ambient()
    }

    pub fn start(&self) -> Vec<Complex64> {
        self.segments[0].point(0.0)
    }

    pub fn end(&self) -> Vec<Complex64> {
        self.segments[self.segments.len() - 1].point(1.0)
    }

    /// The reversed path.
    pub fn reversed(&self) -> Path {
        Path {
            tau: self.tau,
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    /// Concatenation `self` then `other`.
    pub fn then(&self, other: &Path) -> Result<Path> {
        if self.tau != other.tau {
            return Err(Error::Domain("paths use different τ".to_string()));
        }
        let mut s = self.segments.clone();
        s.extend(other.segments.iter().cloned());
        Path::new(self.tau, s)
    }

    /// Polygonal path through the given vertices.
    pub fn polyline(tau: Complex64, vertices: &[Vec<Complex64>]) -> Result<Path> {
        let segs = vertices
            .windows(2)
            .map(|w| Segment::Line {
                from: w[0].clone(),
                to: w[1].clone(),
            })
            .collect();
        Path::new(tau, segs)
    }

    /// SHA-256 of the exact bit patterns describing the path.
    pub fn hash(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "tau:{:016x}{:016x};", self.tau.re.to_bits(), self.tau.im.to_bits());
        for seg in &self.segments {
            seg.describe(&mut s);
        }
        let digest = Sha256::digest(s.as_bytes());
        let mut out = String::with_capacity(64);
        for b in digest {
            let _ = write!(out, "{b:02x}");
        }
        out
    }

    /// Smallest clearance over `samples + 1` equally spaced points per
    /// segment, with the segment index and parameter where it occurs.
    pub fn min_clearance(&self, form: &dyn FormEvaluator, samples: usize) -> (f64, usize, f64) {
        let mut best = (f64::INFINITY, 0, 0.0);
        for (i, s) in self.segments.iter().enumerate() {
            for k in 0..=samples {
                let t = k as f64 / samples as f64;
                let c = form.clearance(&s.point(t), self.tau);
                if c < best.0 {
                    best = (c, i, t);
                }
            }
        }
        best
    }
}

/// Outcome of a transport.
#[derive(Debug, Clone)]
pub struct TransportResult {
    pub matrix: CMat,
    pub step_count: usize,
    pub rejected_steps: usize,
    /// Largest accepted local error estimate.
    pub max_local_error: f64,
    pub path_hash: String,
}

/// Integrator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportOptions {
    pub tol: f64,
    /// Smallest step; steps at the floor are accepted to avoid stalls.
    pub min_step: f64,
    /// Clearance below which the transport aborts.
    pub min_clearance: f64,
    /// Sample points per segment for the upfront clearance scan.
    pub clearance_samples: usize,
    pub max_steps: usize,
}

impl TransportOptions {
    pub fn with_tol(tol: f64) -> TransportOptions {
        TransportOptions {
            tol,
            min_step: 1e-9,
            min_clearance: 1e-6,
            clearance_samples: 64,
            max_steps: 1_000_000,
        }
    }
}

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights (equal to the last row of `A`).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
/// Embedded fourth-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

struct SegmentStats {
    steps: usize,
    rejected: usize,
    max_err: f64,
}

fn coefficient(
    form: &dyn FormEvaluator,
    seg: &Segment,
    tau: Complex64,
    t: f64,
    index: usize,
    opts: &TransportOptions,
) -> Result<CMat> {
    let z = seg.point(t);
    let clear = form.clearance(&z, tau);
    if clear < opts.min_clearance {
        return Err(Error::Singularity {
            what: format!("path approaches a divisor at segment {index}, t = {t:.12}"),
            near_re: z.first().map_or(0.0, |c| c.re),
            near_im: z.first().map_or(0.0, |c| c.im),
        });
    }
    form.eval(&z, tau, &seg.velocity(t)).map_err(|e| match e {
        Error::Singularity { what, near_re, near_im } => Error::Singularity {
            what: format!("{what} (segment {index}, t = {t:.12})"),
            near_re,
            near_im,
        },
        other => other,
    })
}

fn speed(seg: &Segment, t: f64) -> f64 {
    seg.velocity(t).iter().fold(0.0f64, |m, v| m.max(v.norm()))
}

fn transport_segment(
    form: &dyn FormEvaluator,
    seg: &Segment,
    tau: Complex64,
    index: usize,
    opts: &TransportOptions,
) -> Result<(CMat, SegmentStats)> {
    let d = form.dim();
    let mut y = CMat::identity(d, d);
    let mut stats = SegmentStats {
        steps: 0,
        rejected: 0,
        max_err: 0.0,
    };
    let mut t = 0.0f64;
    let mut h = 0.05f64;
    let scale = (0..=8).fold(1.0f64, |m, k| m.max(speed(seg, k as f64 / 8.0)));
    let mut m0 = coefficient(form, seg, tau, 0.0, index, opts)?;
    while t < 1.0 {
        if stats.steps + stats.rejected >= opts.max_steps {
            return Err(Error::Domain(format!(
                "transport exceeded {} steps on segment {index}",
                opts.max_steps
            )));
        }
        h = h.min(1.0 - t).max(opts.min_step.min(1.0 - t));
        let mut k: Vec<CMat> = Vec::with_capacity(7);
        k.push(&m0 * &y);
        let mut m_end = None;
        for s in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                if A[s][j] != 0.0 {
                    ys += kj * Complex64::new(A[s][j] * h, 0.0);
                }
            }
            let ms = coefficient(form, seg, tau, t + C[s] * h, index, opts)?;
            k.push(&ms * &ys);
            if s == 6 {
                m_end = Some(ms);
            }
        }
        let mut y5 = y.clone();
        let mut diff = CMat::zeros(d, d);
        for s in 0..7 {
            if B5[s] != 0.0 {
                y5 += &k[s] * Complex64::new(B5[s] * h, 0.0);
            }
            let w = B5[s] - B4[s];
            if w != 0.0 {
                diff += &k[s] * Complex64::new(w * h, 0.0);
            }
        }
        let err = max_abs(&diff) / max_abs(&y5).max(1.0);
        let allowed = opts.tol * h * scale.max(1.0);
        let at_floor = h <= opts.min_step;
        if err <= allowed || at_floor {
            t += h;
            y = y5;
            m0 = m_end.expect("seven stages");
            stats.steps += 1;
            stats.max_err = stats.max_err.max(err);
        } else {
            stats.rejected += 1;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * libm_pow(allowed / err, 0.25)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok((y, stats))
}

fn libm_pow(x: f64, p: f64) -> f64 {
    num_traits::Float::powf(x, p)
}

/// Transports the identity along `path`.
pub fn parallel_transport(form: &dyn FormEvaluator, path: &Path, opts: &TransportOptions) -> Result<TransportResult> {
    if path.ambient() != form.ambient() {
        return Err(Error::Domain(format!(
            "path has {} coordinates, form expects {}",
            path.ambient(),
            form.ambient()
        )));
    }
    let (c, seg, t) = path.min_clearance(form, opts.clearance_samples);
    if c < opts.min_clearance {
        let z = path.segments[seg].point(t);
        return Err(Error::Singularity {
            what: format!("path meets a divisor at segment {seg}, t = {t}"),
            near_re: z[0].re,
            near_im: z[0].im,
        });
    }
    let d = form.dim();
    let mut total = CMat::identity(d, d);
    let mut result = TransportResult {
        matrix: CMat::identity(d, d),
        step_count: 0,
        rejected_steps: 0,
        max_local_error: 0.0,
        path_hash: path.hash(),
    };
    for (i, s) in path.segments.iter().enumerate() {
        let (m, stats) = transport_segment(form, s, path.tau, i, opts)?;
        total = m * total;
        result.step_count += stats.steps;
        result.rejected_steps += stats.rejected;
        result.max_local_error = result.max_local_error.max(stats.max_err);
    }
    result.matrix = total;
    Ok(result)
}

/// Transports several independent paths, in parallel with the `std` feature.
pub fn transport_all(
    form: &dyn FormEvaluator,
    paths: &[Path],
    opts: &TransportOptions,
) -> Vec<Result<TransportResult>> {
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        paths.par_iter().map(|p| parallel_transport(form, p, opts)).collect()
    }
    #[cfg(not(feature = "std"))]
    {
        paths.iter().map(|p| parallel_transport(form, p, opts)).collect()
    }
}

/// The positively oriented circle `center + radius·e^{iθ}·direction`,
/// starting at `θ = 0`.
pub fn loop_path(tau: Complex64, center: &[Complex64], direction: &[Complex64], radius: f64) -> Result<Path> {
    Path::new(
        tau,
        alloc::vec![Segment::Arc {
            center: center.to_vec(),
            direction: direction.to_vec(),
            radius,
            start: 0.0,
            sweep: 2.0 * PI,
        }],
    )
}

/// Transport around a small circle about a point of a divisor.
///
/// `center` lies on the divisor and `direction` is transverse to it; the
/// circle must stay clear of every divisor, which the upfront clearance scan
/// enforces.
pub fn loop_monodromy(
    form: &dyn FormEvaluator,
    tau: Complex64,
    center: &[Complex64],
    direction: &[Complex64],
    radius: f64,
    opts: &TransportOptions,
) -> Result<TransportResult> {
    parallel_transport(form, &loop_path(tau, center, direction, radius)?, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_form_gives_identity_exactly() {
        let tau = Complex64::new(0.3, 1.1);
        let p = Path::polyline(
            tau,
            &[
                alloc::vec![Complex64::new(0.1, 0.1)],
                alloc::vec![Complex64::new(0.7, 0.4)],
            ],
        )
        .unwrap();
        let r = parallel_transport(&ZeroForm { dim: 3, ambient: 1 }, &p, &TransportOptions::with_tol(1e-10)).unwrap();
        assert_eq!(r.matrix, CMat::identity(3, 3));
    }

    #[test]
    fn disjoint_segments_are_rejected() {
        let tau = Complex64::new(0.3, 1.1);
        let a = Segment::Line {
            from: alloc::vec![Complex64::new(0.0, 0.0)],
            to: alloc::vec![Complex64::new(1.0, 0.0)],
        };
        let b = Segment::Line {
            from: alloc::vec![Complex64::new(2.0, 0.0)],
            to: alloc::vec![Complex64::new(3.0, 0.0)],
        };
        assert!(Path::new(tau, alloc::vec![a, b]).is_err());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let tau = Complex64::new(0.3, 1.1);
        let v = |x: f64| alloc::vec![Complex64::new(x, 0.2)];
        let p = Path::polyline(tau, &[v(0.1), v(0.5)]).unwrap();
        let q = Path::polyline(tau, &[v(0.1), v(0.5000001)]).unwrap();
        assert_eq!(p.hash(), p.clone().hash());
        assert_ne!(p.hash(), q.hash());
        assert_eq!(p.hash().len(), 64);
    }
}
