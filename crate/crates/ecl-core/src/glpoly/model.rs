//! Generators of the `(gl_k, gl_n)` operator model.
//!
//! All indices are 0-based: rows `a, b < k` (the `gl_k` side) and columns
//! `i, j < n` (the `gl_n` side).  The matrix variable `m_{a,i}` has flat index
//! `a·n + i`.
//!
//! * `(E_ab^{(k)})^{(i)} = m_{ai} ∂/∂m_{bi}` and `(E_ij^{(n)})^{(a)} = m_{ai} ∂/∂m_{aj}`.
//! * The elliptic generators `x_i, y_i, t_ij` act by
//!   `x_i = Σ_a x_a E_aa^{(i)}`,
//!   `y_i = −Σ_a ∂_a E_aa^{(i)} + Σ_j Σ_{a≠b} (x_b−x_a)^{−1} E_ab^{(i)} E_ba^{(j)}`,
//!   `t_ij = Σ_{a,b} E_ab^{(i)} E_ba^{(j)}`.
//! * The deformed double current algebra acts through `E_ij = Σ_a E_ij^{(a)}`,
//!   `K(E_ij) = Σ_a x_a E_ij^{(a)}`,
//!   `Q(E_ij) = −Σ_a ∂_a E_ij^{(a)} + Σ_{a≠b} (x_b−x_a)^{−1}(Σ_e E_ie^{(a)} E_ej^{(b)} + E_ij^{(a)})`,
//!   `P(E_ij) = −Σ_a Y_a E_ij^{(a)} + Σ_{a≠b} x_a/(x_b−x_a) E_ij^{(a)}
//!   + ½ Σ_{a≠b} (x_b+x_a)/(x_b−x_a) Σ_e E_ie^{(a)} E_ej^{(b)}` with
//!   `Y_a = (∂_a x_a + x_a ∂_a)/2`.  Cartan values are commutators, e.g.
//!   `K(H_ij) = [K(E_ij), E_ji]`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::op::DiffOp;
use super::ratfunc::{RatFunc, MAX_X, Q};
use super::state::{Shape, MAX_M};
use crate::error::{Error, Result};

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// An element of `gl_n` as a dense rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlElement {
    n: usize,
    entries: Vec<Q>,
}

impl GlElement {
    pub fn zero(n: usize) -> GlElement {
        GlElement {
            n,
            entries: alloc::vec![Q::zero(); n * n],
        }
    }

    /// The elementary matrix `E_ij`.
    pub fn elementary(n: usize, i: usize, j: usize) -> GlElement {
        let mut g = GlElement::zero(n);
        g.entries[i * n + j] = Q::one();
        g
    }

    /// `H_ij = E_ii − E_jj`.
    pub fn h(n: usize, i: usize, j: usize) -> GlElement {
        GlElement::elementary(n, i, i).sub(&GlElement::elementary(n, j, j))
    }

    /// The diagonal matrix with entries `u`.
    pub fn diagonal(u: &[Q]) -> GlElement {
        let n = u.len();
        let mut g = GlElement::zero(n);
        for (i, c) in u.iter().enumerate() {
            g.entries[i * n + i] = c.clone();
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.n + j]
    }

    pub fn add(&self, o: &GlElement) -> GlElement {
        GlElement {
            n: self.n,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &GlElement) -> GlElement {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> GlElement {
        GlElement {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, o: &GlElement) -> GlElement {
        let n = self.n;
        let mut r = GlElement::zero(n);
        for i in 0..n {
            for l in 0..n {
                let a = &self.entries[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    r.entries[i * n + j] += a * &o.entries[l * n + j];
                }
            }
        }
        r
    }

    /// `[self, o]`.
    pub fn bracket(&self, o: &GlElement) -> GlElement {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Q {
        (0..self.n)
            .map(|i| self.get(i, i).clone())
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Trace form `tr(self·o)`, the invariant form with long roots of length 2.
    pub fn trace_form(&self, o: &GlElement) -> Q {
        self.mul(o).trace()
    }
}

/// A bracket word in elementary matrices, used to build current modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BracketWord {
    /// `E_ij`.
    Elem(usize, usize),
    /// `[Y, W]`.
    Bracket(Box<BracketWord>, Box<BracketWord>),
}

impl BracketWord {
    pub fn elem(i: usize, j: usize) -> BracketWord {
        BracketWord::Elem(i, j)
    }

    pub fn bracket(y: BracketWord, w: BracketWord) -> BracketWord {
        BracketWord::Bracket(Box::new(y), Box::new(w))
    }

    /// The matrix the word evaluates to.
    pub fn eval(&self, n: usize) -> GlElement {
        match self {
            BracketWord::Elem(i, j) => GlElement::elementary(n, *i, *j),
            BracketWord::Bracket(y, w) => y.eval(n).bracket(&w.eval(n)),
        }
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketWord::Elem(i, j) => write!(f, "E{}{}", i + 1, j + 1),
            BracketWord::Bracket(y, w) => write!(f, "[{y},{w}]"),
        }
    }
}

/// Which current variable a mode lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurrentKind {
    /// Modes `X⊗u^p`, generated by `Q`.
    U,
    /// Modes `X⊗v^p`, generated by `K`.
    V,
}

/// The operator model on `C[h_k^reg] ⊗ C[M_{k,n}]` with deformation
/// parameters `(λ, β)`.
#[derive(Debug, Clone)]
pub struct Model {
    shape: Shape,
    lambda: Q,
    beta: Q,
}

impl Model {
    /// The built-in model with `λ = −1`, `β = n/4`.
    pub fn new(k: usize, n: usize) -> Result<Model> {
        Model::with_parameters(k, n, qi(-1), qr(n as i64, 4))
    }

    /// A model with explicit parameters.  The operator formulas do not depend
    /// on `(λ, β)`; the parameters enter only the relation and image builders.
    pub fn with_parameters(k: usize, n: usize, lambda: Q, beta: Q) -> Result<Model> {
        if !(1..=MAX_X).contains(&k) {
            return Err(Error::Range(format!("k = {k} outside 1..={MAX_X}")));
        }
        if n < 2 {
            return Err(Error::Range(format!("n = {n} must be at least 2")));
        }
        if k * n > MAX_M {
            return Err(Error::Range(format!("k·n = {} exceeds {MAX_M}", k * n)));
        }
        Ok(Model {
            shape: Shape { k, n },
            lambda,
            beta,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn k(&self) -> usize {
        self.shape.k
    }

    pub fn n(&self) -> usize {
        self.shape.n
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    fn check_row(&self, a: usize) -> Result<()> {
        if a >= self.k() {
            return Err(Error::Index(format!("row index {a} ≥ k = {}", self.k())));
        }
        Ok(())
    }

    fn check_col(&self, i: usize) -> Result<()> {
        if i >= self.n() {
            return Err(Error::Index(format!("column index {i} ≥ n = {}", self.n())));
        }
        Ok(())
    }

    fn check_off_diagonal(&self, i: usize, j: usize) -> Result<()> {
        self.check_col(i)?;
        self.check_col(j)?;
        if i == j {
            return Err(Error::Domain(format!(
                "generator on E_{i}{i} is not defined directly; assemble Cartan values by commutators"
            )));
        }
        Ok(())
    }

    // ---- dual pair -------------------------------------------------------

    /// `(E_ab^{(k)})^{(i)} = m_{ai} ∂/∂m_{bi}`.
    pub fn glk_gen(&self, a: usize, b: usize, i: usize) -> Result<DiffOp> {
        self.check_row(a)?;
        self.check_row(b)?;
        self.check_col(i)?;
        Ok(self.ek(a, b, i))
    }

    /// `(E_ij^{(n)})^{(a)} = m_{ai} ∂/∂m_{aj}`.
    pub fn gln_gen(&self, i: usize, j: usize, a: usize) -> Result<DiffOp> {
        self.check_col(i)?;
        self.check_col(j)?;
        self.check_row(a)?;
        Ok(self.en(i, j, a))
    }

    fn ek(&self, a: usize, b: usize, i: usize) -> DiffOp {
        DiffOp::m_der(self.shape.var(a, i), self.shape.var(b, i))
    }

    fn en(&self, i: usize, j: usize, a: usize) -> DiffOp {
        DiffOp::m_der(self.shape.var(a, i), self.shape.var(a, j))
    }

    /// Row-degree operator `D_a = Σ_i (E_aa^{(k)})^{(i)}` (the diagonal `gl_k`
    /// Cartan generator).
    pub fn row_degree_op(&self, a: usize) -> Result<DiffOp> {
        self.check_row(a)?;
        Ok(DiffOp::sum((0..self.n()).map(|i| self.ek(a, a, i))))
    }

    /// Diagonal action `E_ij = Σ_a E_ij^{(a)}` of `gl_n` (any `i, j`).
    pub fn e(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_col(i)?;
        self.check_col(j)?;
        Ok(self.e_raw(i, j))
    }

    fn e_raw(&self, i: usize, j: usize) -> DiffOp {
        DiffOp::sum((0..self.k()).map(|a| self.en(i, j, a)))
    }

    /// Action of an arbitrary `gl_n` element.
    pub fn e_of(&self, x: &GlElement) -> DiffOp {
        let n = self.n();
        DiffOp::sum((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter_map(|(i, j)| {
            let c = x.get(i, j);
            (!c.is_zero()).then(|| self.e_raw(i, j).scale(c.clone()))
        }))
    }

    /// `Σ_e E_ee`, the total `m`-degree Euler operator.
    pub fn euler(&self) -> DiffOp {
        DiffOp::sum((0..self.n()).map(|e| self.e_raw(e, e)))
    }

    // ---- elliptic generators ---------------------------------------------

    /// Image of `x_i`.
    pub fn cee_x(&self, i: usize) -> Result<DiffOp> {
        self.check_col(i)?;
        Ok(DiffOp::sum(
            (0..self.k()).map(|a| DiffOp::mul_x(RatFunc::var(a)).then(&self.ek(a, a, i))),
        ))
    }

    /// Image of `y_i`.
    pub fn cee_y(&self, i: usize) -> Result<DiffOp> {
        self.check_col(i)?;
        let k = self.k();
        let mut terms = Vec::new();
        for a in 0..k {
            terms.push(DiffOp::der_x(a).then(&self.ek(a, a, i)).scale(-Q::one()));
        }
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let inner = DiffOp::sum((0..self.n()).map(|j| self.ek(a, b, i).then(&self.ek(b, a, j))));
                terms.push(DiffOp::mul_x(RatFunc::inv_diff(b, a)).then(&inner));
            }
        }
        Ok(DiffOp::sum(terms))
    }

    /// Image of `t_ij` (`i ≠ j`).
    pub fn cee_t(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        let k = self.k();
        Ok(DiffOp::sum((0..k).flat_map(|a| {
            (0..k).map(move |b| self.ek(a, b, i).then(&self.ek(b, a, j)))
        })))
    }

    /// `Σ_i u_i x_i`.
    pub fn cee_x_of(&self, u: &[Q]) -> Result<DiffOp> {
        self.linear_in_columns(u, |i| self.cee_x(i))
    }

    /// `Σ_i u_i y_i`.
    pub fn cee_y_of(&self, u: &[Q]) -> Result<DiffOp> {
        self.linear_in_columns(u, |i| self.cee_y(i))
    }

    fn linear_in_columns<F>(&self, u: &[Q], f: F) -> Result<DiffOp>
    where
        F: Fn(usize) -> Result<DiffOp>,
    {
        if u.len() != self.n() {
            return Err(Error::Domain(format!(
                "Cartan vector has length {}, expected {}",
                u.len(),
                self.n()
            )));
        }
        let mut terms = Vec::new();
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                terms.push(f(i)?.scale(c.clone()));
            }
        }
        Ok(DiffOp::sum(terms))
    }

    // ---- deformed double current algebra ----------------------------------

    /// `K(E_ij)`, `i ≠ j`.
    pub fn ddca_k(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        Ok(self.k_raw(i, j))
    }

    fn k_raw(&self, i: usize, j: usize) -> DiffOp {
        DiffOp::sum((0..self.k()).map(|a| DiffOp::mul_x(RatFunc::var(a)).then(&self.en(i, j, a))))
    }

    /// `Σ_{a≠b} f_ab(x) Σ_e E_ie^{(a)} E_ej^{(b)}` for a coefficient family `f`.
    fn two_site(&self, i: usize, j: usize, f: impl Fn(usize, usize) -> RatFunc) -> DiffOp {
        let k = self.k();
        let mut terms = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a == b {
                    continue;
                }
                let inner = DiffOp::sum((0..self.n()).map(|e| self.en(i, e, a).then(&self.en(e, j, b))));
                terms.push(DiffOp::mul_x(f(a, b)).then(&inner));
            }
        }
        DiffOp::sum(terms)
    }

    /// `Q(E_ij)`, `i ≠ j`.
    pub fn ddca_q(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        Ok(self.q_raw(i, j))
    }

    fn q_raw(&self, i: usize, j: usize) -> DiffOp {
        let k = self.k();
        let mut terms = Vec::new();
        for a in 0..k {
            terms.push(DiffOp::der_x(a).then(&self.en(i, j, a)).scale(-Q::one()));
        }
        terms.push(self.two_site(i, j, |a, b| RatFunc::inv_diff(b, a)));
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    terms.push(DiffOp::mul_x(RatFunc::inv_diff(b, a)).then(&self.en(i, j, a)));
                }
            }
        }
        DiffOp::sum(terms)
    }

    /// `P(E_ij)`, `i ≠ j`.
    pub fn ddca_p(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        Ok(self.p_raw(i, j))
    }

    fn p_raw(&self, i: usize, j: usize) -> DiffOp {
        let k = self.k();
        let mut terms = Vec::new();
        for a in 0..k {
            // Y_a = x_a ∂_a + 1/2.
            let y = DiffOp::mul_x(RatFunc::var(a))
                .then(&DiffOp::der_x(a))
                .add(&DiffOp::scalar(qr(1, 2)));
            terms.push(y.then(&self.en(i, j, a)).scale(-Q::one()));
        }
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    let f = RatFunc::var(a).mul(&RatFunc::inv_diff(b, a));
                    terms.push(DiffOp::mul_x(f).then(&self.en(i, j, a)));
                }
            }
        }
        terms.push(
            self.two_site(i, j, |a, b| {
                RatFunc::var(b).add(&RatFunc::var(a)).mul(&RatFunc::inv_diff(b, a))
            })
            .scale(qr(1, 2)),
        );
        DiffOp::sum(terms)
    }

    /// Generic linear extension of an off-diagonal generator to `sl_n`,
    /// with Cartan values `G(H_ij) = [G(E_ij), E_ji]`.
    fn extend(&self, x: &GlElement, g: impl Fn(usize, usize) -> DiffOp) -> Result<DiffOp> {
        let n = self.n();
        if x.dim() != n {
            return Err(Error::Domain(format!("element of gl_{} given for n = {n}", x.dim())));
        }
        if !x.trace().is_zero() {
            return Err(Error::Domain("element is not traceless".into()));
        }
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = x.get(i, j);
                if i != j && !c.is_zero() {
                    terms.push(g(i, j).scale(c.clone()));
                }
            }
        }
        // Diagonal part Σ_i u_i E_ii = Σ_{i<n−1} c_i H_{i,i+1}, c_i = u_0+…+u_i.
        let mut partial = Q::zero();
        for i in 0..n - 1 {
            partial += x.get(i, i);
            if !partial.is_zero() {
                let h = g(i, i + 1).commutator(&self.e_raw(i + 1, i));
                terms.push(h.scale(partial.clone()));
            }
        }
        Ok(DiffOp::sum(terms))
    }

    /// `K(X)` for traceless `X`.
    pub fn k_of(&self, x: &GlElement) -> Result<DiffOp> {
        self.extend(x, |i, j| self.k_raw(i, j))
    }

    /// `Q(X)` for traceless `X`.
    pub fn q_of(&self, x: &GlElement) -> Result<DiffOp> {
        self.extend(x, |i, j| self.q_raw(i, j))
    }

    /// `P(X)` for traceless `X`.
    pub fn p_of(&self, x: &GlElement) -> Result<DiffOp> {
        self.extend(x, |i, j| self.p_raw(i, j))
    }

    /// Residual of the rewritten defining relation for `(a, b, c, d)`:
    /// `[K(E_ab), Q(E_cd)] − P([E_ab, E_cd]) − (λ/2)Σ_j δ_bc E_aj E_jd
    /// − (λ/2)Σ_i δ_ad E_ci E_ib + λ E_ad E_cb − (β − λ/2 − λn/4)(δ_bc E_ad + δ_ad E_cb)`.
    ///
    /// Admissible indices: `a ≠ b`, `c ≠ d`, `(a, b) ≠ (d, c)`.
    pub fn main_relation(&self, a: usize, b: usize, c: usize, d: usize) -> Result<DiffOp> {
        self.check_off_diagonal(a, b)?;
        self.check_off_diagonal(c, d)?;
        if a == d && b == c {
            return Err(Error::Domain("(a,b) = (d,c) is not admissible".into()));
        }
        let n = self.n();
        let lam = self.lambda.clone();
        let half_lam = &lam / qi(2);
        let bracket = GlElement::elementary(n, a, b).bracket(&GlElement::elementary(n, c, d));
        let mut terms = alloc::vec![
            self.k_raw(a, b).commutator(&self.q_raw(c, d)),
            self.p_of(&bracket)?.scale(-Q::one()),
        ];
        if b == c {
            for j in 0..n {
                terms.push(self.e_raw(a, j).then(&self.e_raw(j, d)).scale(-half_lam.clone()));
            }
        }
        if a == d {
            for i in 0..n {
                terms.push(self.e_raw(c, i).then(&self.e_raw(i, b)).scale(-half_lam.clone()));
            }
        }
        terms.push(self.e_raw(a, d).then(&self.e_raw(c, b)).scale(lam.clone()));
        let shift = &self.beta - &half_lam - &lam * qr(n as i64, 4);
        if b == c {
            terms.push(self.e_raw(a, d).scale(-shift.clone()));
        }
        if a == d {
            terms.push(self.e_raw(c, b).scale(-shift));
        }
        Ok(DiffOp::sum(terms))
    }

    /// `Z_ab = [K(H_ab), Q(H_ab)] − (λ/4) Σ_{i≠j} S([H_ab, E_ij], [E_ji, H_ab])`.
    pub fn z_pair(&self, a: usize, b: usize) -> Result<DiffOp> {
        self.check_off_diagonal(a, b)?;
        let n = self.n();
        let h = GlElement::h(n, a, b);
        let mut terms = alloc::vec![self.k_of(&h)?.commutator(&self.q_of(&h)?)];
        let quarter = &self.lambda / qi(4);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                // [H_ab, E_ij] = c E_ij and [E_ji, H_ab] = c E_ji.
                let c = qi(i64::from(i == a) - i64::from(i == b) - i64::from(j == a) + i64::from(j == b));
                if c.is_zero() {
                    continue;
                }
                let s = self.e_raw(i, j).sym(&self.e_raw(j, i));
                terms.push(s.scale(-(&quarter * &c * &c)));
            }
        }
        Ok(DiffOp::sum(terms))
    }

    /// `Z_n = Σ_a Z_{a,a+1}` with the cyclic convention `(n−1, n) ↦ (n−1, 0)`.
    pub fn ddca_zn(&self) -> Result<DiffOp> {
        let n = self.n();
        let mut terms = Vec::new();
        for a in 0..n {
            terms.push(self.z_pair(a, (a + 1) % n)?);
        }
        Ok(DiffOp::sum(terms))
    }

    // ---- elliptic algebra through the double current algebra -------------

    /// Image of `t_ij`:
    /// `(λ/2)S(E_ij, E_ji) + Z_n/(2n²) + 2(β − λ/2)((E_ii + E_jj)/n − (2/n²)Σ_e E_ee)`.
    pub fn aell_image_t(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        let n = self.n() as i64;
        let lam = &self.lambda;
        let s = self.e_raw(i, j).sym(&self.e_raw(j, i));
        let shift = (&self.beta - lam / qi(2)) * qi(2);
        let cartan = self
            .e_raw(i, i)
            .add(&self.e_raw(j, j))
            .scale(qr(1, n))
            .sub(&self.euler().scale(qr(2, n * n)));
        Ok(DiffOp::sum([
            s.scale(lam / qi(2)),
            self.ddca_zn()?.scale(qr(1, 2 * n * n)),
            cartan.scale(shift),
        ]))
    }

    fn traceless(&self, u: &[Q]) -> Result<GlElement> {
        if u.len() != self.n() {
            return Err(Error::Domain(format!(
                "Cartan vector has length {}, expected {}",
                u.len(),
                self.n()
            )));
        }
        let g = GlElement::diagonal(u);
        if !g.trace().is_zero() {
            return Err(Error::Domain("Cartan vector is not traceless".into()));
        }
        Ok(g)
    }

    /// Image of `x(u) = K(u)` for traceless `u`.
    pub fn aell_image_x(&self, u: &[Q]) -> Result<DiffOp> {
        self.k_of(&self.traceless(u)?)
    }

    /// Image of `y(u) = Q(u)` for traceless `u`.
    pub fn aell_image_y(&self, u: &[Q]) -> Result<DiffOp> {
        self.q_of(&self.traceless(u)?)
    }

    // ---- current modes --------------------------------------------------

    /// `X⊗u^p` or `X⊗v^p` for `X` presented by a bracket word, built inside
    /// the image of `g[u]` (from `Q`) or `g[v]` (from `K`) via
    /// `[Y, W]⊗u^p = [Y⊗u, W⊗u^{p−1}]`.
    ///
    /// `claimed` must equal the matrix the word evaluates to.
    pub fn current_mode(&self, claimed: &GlElement, word: &BracketWord, p: usize, kind: CurrentKind) -> Result<DiffOp> {
        let value = word.eval(self.n());
        if &value != claimed {
            return Err(Error::Domain(format!(
                "bracket word {word} does not evaluate to the claimed element"
            )));
        }
        self.mode_of_word(word, p, kind)
    }

    fn mode_of_word(&self, word: &BracketWord, p: usize, kind: CurrentKind) -> Result<DiffOp> {
        if p == 0 {
            return Ok(self.e_of(&word.eval(self.n())));
        }
        match word {
            BracketWord::Elem(i, j) => {
                if p > 1 {
                    return Err(Error::Domain(format!(
                        "mode {p} of E{}{} needs a bracket presentation",
                        i + 1,
                        j + 1
                    )));
                }
                let x = GlElement::elementary(self.n(), *i, *j);
                match kind {
                    CurrentKind::U => self.q_of(&x),
                    CurrentKind::V => self.k_of(&x),
                }
            }
            BracketWord::Bracket(y, w) => {
                let a = self.mode_of_word(y, 1, kind)?;
                let b = self.mode_of_word(w, p - 1, kind)?;
                Ok(a.commutator(&b))
            }
        }
    }

    /// `X_γ⊗u^p = ad(Q(γ∨/2))^p (E_ij)` for the root `γ = ε_i − ε_j`.
    pub fn root_mode_u(&self, i: usize, j: usize, p: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        let half_coroot = self.q_of(&GlElement::h(self.n(), i, j))?.scale(qr(1, 2));
        Ok(half_coroot.ad_pow(p, &self.e_raw(i, j)))
    }

    /// `X_γ⊗v^p = ad(K(γ∨/2))^p (E_ij)`.
    pub fn root_mode_v(&self, i: usize, j: usize, p: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        let half_coroot = self.k_of(&GlElement::h(self.n(), i, j))?.scale(qr(1, 2));
        Ok(half_coroot.ad_pow(p, &self.e_raw(i, j)))
    }

    /// `h⊗u^p` for a Cartan element `h = Σ c_i H_{i,i+1}` (`p ≥ 1`), using
    /// `H_ij⊗u^p = [E_ij⊗u, E_ji⊗u^{p−1}]`.
    pub fn cartan_mode_u(&self, h: &GlElement, p: usize) -> Result<DiffOp> {
        self.cartan_mode(h, p, CurrentKind::U)
    }

    /// `h⊗v^p`, analogous to [`Model::cartan_mode_u`].
    pub fn cartan_mode_v(&self, h: &GlElement, p: usize) -> Result<DiffOp> {
        self.cartan_mode(h, p, CurrentKind::V)
    }

    fn cartan_mode(&self, h: &GlElement, p: usize, kind: CurrentKind) -> Result<DiffOp> {
        let n = self.n();
        if p == 0 {
            return Ok(self.e_of(h));
        }
        if !h.trace().is_zero() {
            return Err(Error::Domain("Cartan element is not traceless".into()));
        }
        let mut terms = Vec::new();
        let mut partial = Q::zero();
        for i in 0..n - 1 {
            partial += h.get(i, i);
            if partial.is_zero() {
                continue;
            }
            let first = match kind {
                CurrentKind::U => self.q_raw(i, i + 1),
                CurrentKind::V => self.k_raw(i, i + 1),
            };
            let rest = match kind {
                CurrentKind::U => self.root_mode_u(i + 1, i, p - 1)?,
                CurrentKind::V => self.root_mode_v(i + 1, i, p - 1)?,
            };
            terms.push(first.commutator(&rest).scale(partial.clone()));
        }
        Ok(DiffOp::sum(terms))
    }

    /// `κ_γ = E_ij E_ji + E_ji E_ij` for `γ = ε_i − ε_j`.
    pub fn kappa(&self, i: usize, j: usize) -> Result<DiffOp> {
        self.check_off_diagonal(i, j)?;
        Ok(self.e_raw(i, j).sym(&self.e_raw(j, i)))
    }

    /// `Ω_{p,q} = Σ_{γ∈Φ}(X_γ⊗u^p)(X_{−γ}⊗u^q) + Σ_r (h_r⊗u^p)(h^r⊗u^q)`
    /// with `h_r = H_{r,r+1}` and `h^r` the dual basis under the trace form.
    pub fn omega(&self, p: usize, q: usize) -> Result<DiffOp> {
        let n = self.n();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    terms.push(self.root_mode_u(i, j, p)?.then(&self.root_mode_u(j, i, q)?));
                }
            }
        }
        for r in 0..n - 1 {
            let h = GlElement::h(n, r, r + 1);
            let dual = fundamental_coweight(n, r);
            terms.push(self.cartan_mode_u(&h, p)?.then(&self.cartan_mode_u(&dual, q)?));
        }
        Ok(DiffOp::sum(terms))
    }
}

/// `ω_r = Σ_{j≤r} E_jj − ((r+1)/n)·I`, dual to `H_{r,r+1}` under the trace form.
pub fn fundamental_coweight(n: usize, r: usize) -> GlElement {
    let mut u = alloc::vec![qr(-(r as i64 + 1), n as i64); n];
    for v in u.iter_mut().take(r + 1) {
        *v += Q::one();
    }
    GlElement::diagonal(&u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coweights_are_dual() {
        let n = 4;
        for r in 0..n - 1 {
            for s in 0..n - 1 {
                let v = GlElement::h(n, r, r + 1).trace_form(&fundamental_coweight(n, s));
                assert_eq!(v, if r == s { Q::one() } else { Q::zero() });
            }
        }
    }

    #[test]
    fn diagonal_generators_are_rejected() {
        let m = Model::new(2, 4).unwrap();
        assert!(matches!(m.ddca_k(1, 1), Err(Error::Domain(_))));
        assert!(matches!(m.glk_gen(2, 0, 0), Err(Error::Index(_))));
    }

    #[test]
    fn word_mismatch_is_reported() {
        let m = Model::new(2, 4).unwrap();
        let w = BracketWord::bracket(BracketWord::elem(0, 1), BracketWord::elem(1, 2));
        let wrong = GlElement::elementary(4, 0, 3);
        assert!(m.current_mode(&wrong, &w, 2, CurrentKind::U).is_err());
        let right = GlElement::elementary(4, 0, 2);
        assert!(m.current_mode(&right, &w, 2, CurrentKind::U).is_ok());
    }
}
