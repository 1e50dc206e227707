//! Representations of the type-A rational Cherednik algebra used as
//! finite-dimensional fibers.
//!
//! * [`build_small_rep_cherednik`]: the zero weight space `V[0]` of the
//!   adjoint representation of `sl_n` with its `S_n` action, on which the
//!   Casimir-type elements act through reflections,
//!   `κ_α = (α,α)(1 − s_α)`.  Only `t_α` and the Weyl matrices are available.
//! * [`cherednik_finite_rep`]: the finite-dimensional irreducible quotient
//!   `L_c(triv)` of `C[h]` at `c = r/n`, where `x(v)` acts by multiplication
//!   by `(v, x)`, `y(u)` by the Dunkl operator
//!   `D_u = ħ∂_u − c Σ_{α>0} (α,u)/(α,x) (1 − s_α)` and
//!   `t_γ = ħ/h∨ − c s_γ`.  Every relation of the flatness criterion holds on
//!   it, so it carries a genuinely flat connection.
//!
//! Both are computed in exact rational arithmetic and converted to complex
//! matrices at the end.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::qlin::{nullspace, reduce, rref, QMat};
use super::{CMat, ConnRep};
use crate::error::{Error, Result};
use crate::glpoly::ratfunc::{XExp, MAX_X};
use crate::glpoly::{XPoly, Q};
use crate::rootsys::{Family, RootSystem};

/// Highest polynomial degree searched for singular vectors and for the top
/// of the finite quotient.
pub const MAX_QUOTIENT_DEGREE: usize = 12;

fn q_to_c(q: &Q) -> Complex64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    Complex64::new(n / d, 0.0)
}

fn qmat_to_c(m: &QMat) -> CMat {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    CMat::from_fn(rows, cols, |i, j| q_to_c(&m[i][j]))
}

fn require_type_a(rs: &RootSystem) -> Result<usize> {
    if rs.family() != Family::A {
        return Err(Error::Unsupported {
            label: rs.family().label().to_string(),
            rank: rs.rank(),
        });
    }
    Ok(rs.ambient_dim())
}

/// Positive roots of `A_{n−1}` as index pairs `(i, j)`, `i < j`, in the
/// root system's own order.
fn positive_pairs(rs: &RootSystem) -> Vec<(usize, usize)> {
    rs.positive_roots()
        .iter()
        .map(|r| {
            let i = r.0.iter().position(|&c| c == 1).expect("type A root");
            let j = r.0.iter().position(|&c| c == -1).expect("type A root");
            (i.min(j), i.max(j))
        })
        .collect()
}

/// The zero weight space of the adjoint representation of `sl_n` with the
/// Casimir-type elements `κ_α = (α,α)(1 − s_α)`.
///
/// The fiber has basis `H_r = E_rr − E_{r+1,r+1}`; `S_n` permutes diagonal
/// entries.  With `λ = c` and `Z = ħ − c·h∨`, `t_α = (λ/2)κ_α + Z/h∨ =
/// ħ/h∨ − c s_α`, the same normalisation as [`cherednik_finite_rep`].  The
/// maps `x` and `y` are absent.
pub fn build_small_rep_cherednik(rs: &RootSystem, hbar: Complex64, c: Complex64) -> Result<ConnRep> {
    let n = require_type_a(rs)?;
    if n < 3 {
        return Err(Error::Domain(format!(
            "the small representation needs n ≥ 3, got n = {n}"
        )));
    }
    let d = n - 1;
    let weyl: Vec<CMat> = positive_pairs(rs)
        .into_iter()
        .map(|(i, j)| {
            CMat::from_fn(d, d, |row, col| {
                // Image of H_col: swap diagonal entries i and j, then read
                // coordinates as partial sums of the diagonal.
                let mut diag = alloc::vec![0i64; n];
                diag[col] = 1;
                diag[col + 1] = -1;
                diag.swap(i, j);
                let coord: i64 = diag[..=row].iter().sum();
                Complex64::new(coord as f64, 0.0)
            })
        })
        .collect();
    let id = CMat::identity(d, d);
    let kappa: Vec<CMat> = weyl.iter().map(|s| (&id - s) * Complex64::new(2.0, 0.0)).collect();
    let hv = Complex64::new(n as f64, 0.0);
    let z = hbar - c * hv;
    Ok(ConnRep::casimir_from_kappa("cherednik-small", d, n, kappa, z, c, hv, None, None)?.with_weyl(weyl))
}

/// Dimension of `L_c(triv)` for `S_n` at `c = r/n`, `gcd(r, n) = 1`: `r^{n−1}`.
pub fn expected_finite_dimension(n: usize, r: usize) -> usize {
    r.pow((n - 1) as u32)
}

/// Exact data of the finite quotient `L_c(triv)`.
#[derive(Debug, Clone)]
pub struct FiniteCherednik {
    pub n: usize,
    pub c: Q,
    pub hbar: Q,
    /// Degree of the singular vectors generating the quotient ideal.
    pub singular_degree: usize,
    /// Dimensions of the graded pieces.
    pub graded_dims: Vec<usize>,
    x: Vec<QMat>,
    y: Vec<QMat>,
    s: Vec<QMat>,
    pairs: Vec<(usize, usize)>,
}

impl FiniteCherednik {
    pub fn dim(&self) -> usize {
        self.graded_dims.iter().sum()
    }

    /// The connection data `t_γ = ħ/h∨ − c s_γ`, `x`, `y`, `s_α`.
    pub fn to_conn_rep(&self) -> ConnRep {
        let d = self.dim();
        let id = CMat::identity(d, d);
        let hv = Complex64::new(self.n as f64, 0.0);
        let hbar = q_to_c(&self.hbar);
        let c = q_to_c(&self.c);
        let weyl: Vec<CMat> = self.s.iter().map(qmat_to_c).collect();
        let t = weyl.iter().map(|s| &id * (hbar / hv) - s * c).collect();
        let kappa = weyl.iter().map(|s| (&id - s) * Complex64::new(2.0, 0.0)).collect();
        ConnRep {
            label: "cherednik-finite".to_string(),
            dim: d,
            ambient: self.n,
            t,
            x: Some(self.x.iter().map(qmat_to_c).collect()),
            y: Some(self.y.iter().map(qmat_to_c).collect()),
            kappa: Some(kappa),
            z_scalar: Some(hbar - c * hv),
            lambda: Some(c),
            weyl: Some(weyl),
        }
    }

    /// Exact matrices of `x(e_i − ē)` (multiplication by `x_i` modulo `Σx`).
    pub fn x_exact(&self) -> &[QMat] {
        &self.x
    }

    /// Exact matrices of the Dunkl operators `y(e_i − ē)`.
    pub fn y_exact(&self) -> &[QMat] {
        &self.y
    }

    /// Exact reflection matrices, one per positive root.
    pub fn s_exact(&self) -> &[QMat] {
        &self.s
    }

    /// Positive roots as index pairs, aligned with [`FiniteCherednik::s_exact`].
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// Polynomial arithmetic on `C[h] = C[x_0, …, x_{n−1}]/(Σx)`, normal form in
/// the first `n − 1` variables.
struct Reduced {
    n: usize,
    /// Powers of `−(x_0 + … + x_{n−2})`.
    last_powers: Vec<XPoly>,
}

impl Reduced {
    fn new(n: usize) -> Reduced {
        let mut s = XPoly::zero();
        for i in 0..n - 1 {
            s = s.add(&XPoly::var(i));
        }
        let s = s.scale(&-Q::one());
        let mut last_powers = alloc::vec![XPoly::one()];
        for p in 1..=2 * MAX_QUOTIENT_DEGREE + 2 {
            let next = last_powers[p - 1].mul(&s);
            last_powers.push(next);
        }
        Reduced { n, last_powers }
    }

    fn normalize(&self, p: &XPoly) -> XPoly {
        let last = self.n - 1;
        let mut out = XPoly::zero();
        for (e, c) in p.terms() {
            let k = e[last] as usize;
            let mut f = *e;
            f[last] = 0;
            out = out.add(&XPoly::monomial(f).scale(c).mul(&self.last_powers[k]));
        }
        out
    }

    fn swap(p: &XPoly, i: usize, j: usize) -> XPoly {
        let mut out = XPoly::zero();
        for (e, c) in p.terms() {
            let mut f = *e;
            f.swap(i, j);
            out = out.add(&XPoly::monomial(f).scale(c));
        }
        out
    }

    /// `D_u F` for a traceless `u`, returned in normal form.
    fn dunkl(&self, u: &[Q], hbar: &Q, c: &Q, f: &XPoly) -> Result<XPoly> {
        let mut r = XPoly::zero();
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                r = r.add(&f.derivative(i).scale(&(ui * hbar)));
            }
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                let coef = &u[i] - &u[j];
                if coef.is_zero() {
                    continue;
                }
                let diff = f.add(&Reduced::swap(f, i, j).scale(&-Q::one()));
                let quot = diff
                    .div_diff(i, j)
                    .ok_or_else(|| Error::Internal("divided difference is not a polynomial".to_string()))?;
                r = r.add(&quot.scale(&(-(c * coef))));
            }
        }
        Ok(self.normalize(&r))
    }
}

/// Monomials of total degree `d` in the first `vars` variables.
fn monomials(vars: usize, d: usize) -> Vec<XExp> {
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_X];
    fn rec(pos: usize, vars: usize, left: usize, cur: &mut XExp, out: &mut Vec<XExp>) {
        if pos + 1 == vars {
            cur[pos] = left as u8;
            out.push(*cur);
            cur[pos] = 0;
            return;
        }
        for p in (0..=left).rev() {
            cur[pos] = p as u8;
            rec(pos + 1, vars, left - p, cur, out);
        }
        cur[pos] = 0;
    }
    if vars == 0 {
        return out;
    }
    rec(0, vars, d, &mut cur, &mut out);
    out
}

/// Graded pieces of `C[h]` with the quotient ideal per degree.
struct Graded {
    basis: Vec<Vec<XExp>>,
    index: Vec<BTreeMap<XExp, usize>>,
    /// RREF of the ideal in each degree and its pivot columns.
    ideal: Vec<(QMat, Vec<usize>)>,
}

impl Graded {
    fn coords(&self, d: usize, p: &XPoly) -> Vec<Q> {
        let mut v = alloc::vec![Q::zero(); self.basis[d].len()];
        for (e, c) in p.terms() {
            if let Some(&i) = self.index[d].get(e) {
                v[i] += c.clone();
            }
        }
        v
    }

    fn poly(&self, d: usize, v: &[Q]) -> XPoly {
        let mut p = XPoly::zero();
        for (e, c) in self.basis[d].iter().zip(v) {
            if !c.is_zero() {
                p = p.add(&XPoly::monomial(*e).scale(c));
            }
        }
        p
    }

    fn in_ideal(&self, d: usize, p: &XPoly) -> bool {
        if d >= self.ideal.len() {
            return true;
        }
        let mut v = self.coords(d, p);
        let (b, piv) = &self.ideal[d];
        reduce(&mut v, b, piv);
        v.iter().all(Zero::is_zero)
    }
}

fn homogeneous_parts(p: &XPoly) -> BTreeMap<usize, XPoly> {
    let mut out: BTreeMap<usize, XPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let d = e.iter().map(|&v| v as usize).sum();
        let entry = out.entry(d).or_insert_with(XPoly::zero);
        *entry = entry.add(&XPoly::monomial(*e).scale(c));
    }
    out
}

/// Builds `L_c(triv)` for `S_n`, `3 ≤ n ≤ 4`.
///
/// The lowest-degree singular vectors (common kernel of all Dunkl
/// operators) generate the ideal; the construction verifies that the Dunkl
/// operators preserve it and that the quotient is finite within
/// [`MAX_QUOTIENT_DEGREE`].
pub fn cherednik_finite_rep(n: usize, hbar: Q, c: Q) -> Result<FiniteCherednik> {
    if !(2..=MAX_X).contains(&n) {
        return Err(Error::Domain(format!(
            "finite Cherednik quotient supports 2 ≤ n ≤ {MAX_X}, got {n}"
        )));
    }
    if hbar.is_zero() {
        return Err(Error::Domain("hbar must be nonzero".to_string()));
    }
    let red = Reduced::new(n);
    let vars = n - 1;
    let nq = Q::from_integer(BigInt::from(n as i64));
    let traceless = |i: usize| -> Vec<Q> {
        (0..n)
            .map(|a| if a == i { Q::one() } else { Q::zero() } - Q::one() / nq.clone())
            .collect()
    };
    let simple: Vec<Vec<Q>> = (0..n - 1)
        .map(|r| {
            (0..n)
                .map(|a| {
                    if a == r {
                        Q::one()
                    } else if a == r + 1 {
                        -Q::one()
                    } else {
                        Q::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut g = Graded {
        basis: Vec::new(),
        index: Vec::new(),
        ideal: Vec::new(),
    };
    let push_degree = |g: &mut Graded, d: usize| {
        let b = monomials(vars, d);
        g.index.push(b.iter().enumerate().map(|(i, e)| (*e, i)).collect());
        g.basis.push(b);
    };

    // Lowest degree carrying singular vectors.
    push_degree(&mut g, 0);
    let mut generators: Vec<XPoly> = Vec::new();
    let mut d0 = 0;
    for d in 1..=MAX_QUOTIENT_DEGREE {
        push_degree(&mut g, d);
        let dim_d = g.basis[d].len();
        let dim_below = g.basis[d - 1].len();
        // Rows: (simple root, target coordinate); columns: source monomial.
        let mut rows: QMat = alloc::vec![alloc::vec![Q::zero(); dim_d]; simple.len() * dim_below];
        for (col, e) in g.basis[d].iter().enumerate() {
            let f = XPoly::monomial(*e);
            for (s, u) in simple.iter().enumerate() {
                let img = red.dunkl(u, &hbar, &c, &f)?;
                let v = g.coords(d - 1, &img);
                for (r, val) in v.into_iter().enumerate() {
                    rows[s * dim_below + r][col] = val;
                }
            }
        }
        let ns = nullspace(&rows, dim_d);
        if !ns.is_empty() {
            generators = ns.iter().map(|v| g.poly(d, v)).collect();
            d0 = d;
            break;
        }
    }
    if generators.is_empty() {
        return Err(Error::Domain(format!(
            "no singular vectors up to degree {MAX_QUOTIENT_DEGREE} at c = {c}"
        )));
    }

    // Ideal generated by the singular vectors, degree by degree.
    for d in 0..d0 {
        g.ideal.push((Vec::new(), Vec::new()));
        debug_assert!(d < d0);
    }
    let mut top = None;
    for d in d0..=2 * MAX_QUOTIENT_DEGREE {
        if g.basis.len() <= d {
            push_degree(&mut g, d);
        }
        let mut rows: QMat = Vec::new();
        for m in monomials(vars, d - d0) {
            for gen in &generators {
                let p = red.normalize(&XPoly::monomial(m).mul(gen));
                rows.push(g.coords(d, &p));
            }
        }
        let dim_d = g.basis[d].len();
        let (b, piv) = rref(&rows, dim_d);
        let full = piv.len() == dim_d;
        g.ideal.push((b, piv));
        if full {
            top = Some(d);
            break;
        }
    }
    let Some(top) = top else {
        return Err(Error::Domain(format!(
            "quotient at c = {c} is not finite below degree {}",
            2 * MAX_QUOTIENT_DEGREE
        )));
    };

    // Dunkl operators must map the ideal into itself.
    for d in d0..top {
        let (b, _) = &g.ideal[d];
        for row in b {
            let p = g.poly(d, row);
            for u in &simple {
                let img = red.dunkl(u, &hbar, &c, &p)?;
                if !g.in_ideal(d - 1, &img) {
                    return Err(Error::Internal(format!(
                        "Dunkl operators do not preserve the singular ideal in degree {d}"
                    )));
                }
            }
        }
    }

    // Quotient basis: non-pivot monomials of each degree below `top`.
    let mut qbasis: Vec<(usize, usize)> = Vec::new();
    let mut graded_dims = Vec::new();
    for d in 0..top {
        let piv = &g.ideal[d].1;
        let before = qbasis.len();
        for i in 0..g.basis[d].len() {
            if !piv.contains(&i) {
                qbasis.push((d, i));
            }
        }
        graded_dims.push(qbasis.len() - before);
    }
    let dim = qbasis.len();
    let position: BTreeMap<(usize, usize), usize> = qbasis.iter().enumerate().map(|(k, &di)| (di, k)).collect();

    let project = |p: &XPoly| -> Vec<Q> {
        let mut out = alloc::vec![Q::zero(); dim];
        for (d, part) in homogeneous_parts(p) {
            if d >= top {
                continue;
            }
            let mut v = g.coords(d, &part);
            let (b, piv) = &g.ideal[d];
            reduce(&mut v, b, piv);
            for (i, val) in v.into_iter().enumerate() {
                if !val.is_zero() {
                    out[position[&(d, i)]] = val;
                }
            }
        }
        out
    };
    let matrix_of = |op: &dyn Fn(&XPoly) -> Result<XPoly>| -> Result<QMat> {
        let mut m: QMat = alloc::vec![alloc::vec![Q::zero(); dim]; dim];
        for (col, &(d, i)) in qbasis.iter().enumerate() {
            let img = op(&XPoly::monomial(g.basis[d][i]))?;
            for (row, val) in project(&img).into_iter().enumerate() {
                m[row][col] = val;
            }
        }
        Ok(m)
    };

    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        x.push(matrix_of(&|f: &XPoly| Ok(red.normalize(&f.mul(&XPoly::var(i)))))?);
        let u = traceless(i);
        y.push(matrix_of(&|f: &XPoly| red.dunkl(&u, &hbar, &c, f))?);
    }
    let rs = RootSystem::build(Family::A, n - 1)?;
    let pairs = positive_pairs(&rs);
    let mut s = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        s.push(matrix_of(&|f: &XPoly| Ok(red.normalize(&Reduced::swap(f, i, j))))?);
    }
    Ok(FiniteCherednik {
        n,
        c,
        hbar,
        singular_degree: d0,
        graded_dims,
        x,
        y,
        s,
        pairs,
    })
}

/// `c = r/n` as an exact rational.
pub fn rational(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 3).len(), 4);
        assert_eq!(monomials(3, 2).len(), 6);
    }

    #[test]
    fn sl3_two_thirds_has_dimension_four() {
        let rep = cherednik_finite_rep(3, Q::one(), rational(2, 3)).unwrap();
        assert_eq!(rep.singular_degree, 2);
        assert_eq!(rep.graded_dims, alloc::vec![1, 2, 1]);
        assert_eq!(rep.dim(), expected_finite_dimension(3, 2));
    }

    #[test]
    fn one_over_n_is_trivial() {
        let rep = cherednik_finite_rep(3, Q::one(), rational(1, 3)).unwrap();
        assert_eq!(rep.dim(), 1);
    }

    #[test]
    fn small_rep_needs_type_a() {
        let rs = RootSystem::build(Family::B, 2).unwrap();
        let one = Complex64::new(1.0, 0.0);
        assert!(matches!(
            build_small_rep_cherednik(&rs, one, one),
            Err(Error::Unsupported { .. })
        ));
    }
}
