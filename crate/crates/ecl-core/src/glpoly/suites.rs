//! Named identity suites for the operator model.
//!
//! Every suite evaluates two readings of its identities side by side:
//!
//! * the **stated** form: each identity exactly as it is usually written,
//!   on the test states it is claimed for;
//! * the **exact** form: the identity with its correction term made
//!   explicit (or restricted to the subspace where it really holds).
//!
//! [`Reading`] decides which of the two is asserted.  The other is still
//! computed and reported with status [`Status::Probe`], so a report always
//! shows both.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::check::{check_annihilates, check_identity, IdentityReport, TestFamily, WeightPredicate};
use super::model::{BracketWord, CurrentKind, GlElement, Model};
use super::op::DiffOp;
use super::ratfunc::{RatFunc, Q};
use crate::error::{Error, Result};

fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// `(gl_k, gl_n)` dual-pair identities.
    DualPair,
    /// The elliptic generators `x_i, y_i, t_ij` and their quotient relations.
    EllipticGenerators,
    /// The rewritten defining relation of `D_{λ,β}(sl_n)`.
    MainRelation,
    /// Centrality and normalization of `Z_n`.
    Zn,
    /// The degree-3 bracket identity for `Q(v)` and the `g[u]` current modes.
    LemmaQv,
    /// The relations of the elliptic Lie algebra through `D_{λ,β}(sl_n)`.
    Aell,
    /// Coefficient-by-coefficient comparison of the two connection forms.
    Duality,
    /// Exploratory `sl_2`-triple probe (never asserted).
    Sl2Probe,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::DualPair,
        Suite::EllipticGenerators,
        Suite::MainRelation,
        Suite::Zn,
        Suite::LemmaQv,
        Suite::Aell,
        Suite::Duality,
        Suite::Sl2Probe,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Suite::DualPair => "dualpair",
            Suite::EllipticGenerators => "elliptic-generators",
            Suite::MainRelation => "main-relation",
            Suite::Zn => "zn",
            Suite::LemmaQv => "lemmaQv",
            Suite::Aell => "aell",
            Suite::Duality => "duality",
            Suite::Sl2Probe => "sl2-probe",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.label() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }

    /// The statement the suite checks, used as the report anchor.
    pub fn anchor(self) -> &'static str {
        match self {
            Suite::DualPair => "dual pair (gl_k, gl_n) on C[M_{k,n}]: identities between the two actions",
            Suite::EllipticGenerators => {
                "homomorphism from the elliptic Lie algebra to B_n/B_n h_k^diag (x_i, y_i, t_ij images)"
            }
            Suite::MainRelation => "action of D_{-1,n/4}(sl_n) on C[h_k^reg]⊗C[M_{k,n}]: rewritten main relation",
            Suite::Zn => "central element Z_n of D_{λ,β}(sl_n) and its action",
            Suite::LemmaQv => "bracket identity for Q(v) at degree 3 and Ω_{p,q} invariance",
            Suite::Aell => "morphism from the elliptic Lie algebra to D_{λ,β}(sl_n): relations (1)-(4)",
            Suite::Duality => "gl_k KZB connection coincides with the elliptic Casimir connection plus an abelian form",
            Suite::Sl2Probe => "sl_2-triple in the double current algebra (exploratory)",
        }
    }
}

/// Which form of each identity is asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Assert the identities as stated.
    Stated,
    /// Assert the exact corrected identities.
    Exact,
}

impl Reading {
    pub fn label(self) -> &'static str {
        match self {
            Reading::Stated => "stated",
            Reading::Exact => "exact",
        }
    }

    pub fn parse(s: &str) -> Result<Reading> {
        match s {
            "stated" => Ok(Reading::Stated),
            "exact" => Ok(Reading::Exact),
            _ => Err(Error::Domain(format!("unknown reading '{s}' (expected stated|exact)"))),
        }
    }
}

/// Whether a check counts towards the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Asserted,
    Probe,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Asserted => "asserted",
            Status::Probe => "probe",
        }
    }
}

/// Form of a check within a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// The identity as stated.
    Stated,
    /// The corrected identity.
    Exact,
    /// An identity with a single form (asserted under either reading).
    Common,
    /// Exploratory evidence, never asserted.
    Probe,
}

/// One checked identity family in a suite report.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCheck {
    pub form: Form,
    pub status: Status,
    pub report: IdentityReport,
}

/// Parameters of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub k: usize,
    pub n: usize,
    /// Test family; weights are chosen per identity by the suite.
    pub family: TestFamily,
    /// Highest ad-power compared by the duality suite.
    pub ad_order: usize,
    pub reading: Reading,
}

impl SuiteConfig {
    pub fn new(k: usize, n: usize) -> SuiteConfig {
        SuiteConfig {
            k,
            n,
            family: TestFamily::DEFAULT,
            ad_order: 2,
            reading: Reading::Stated,
        }
    }

    fn status(&self, form: Form) -> Status {
        match (form, self.reading) {
            (Form::Common, _) | (Form::Stated, Reading::Stated) | (Form::Exact, Reading::Exact) => Status::Asserted,
            _ => Status::Probe,
        }
    }

    fn check(&self, form: Form, report: IdentityReport) -> SuiteCheck {
        SuiteCheck {
            form,
            status: self.status(form),
            report,
        }
    }
}

/// Whether every asserted check of a suite passed.
pub fn suite_passed(checks: &[SuiteCheck]) -> bool {
    checks.iter().all(|c| c.status == Status::Probe || c.report.passed())
}

/// Runs one suite.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let m = Model::new(cfg.k, cfg.n)?;
    match suite {
        Suite::DualPair => dual_pair(&m, cfg),
        Suite::EllipticGenerators => elliptic_generators(&m, cfg),
        Suite::MainRelation => main_relation(&m, cfg),
        Suite::Zn => zn(&m, cfg),
        Suite::LemmaQv => lemma_qv(&m, cfg),
        Suite::Aell => aell(&m, cfg),
        Suite::Duality => duality(&m, cfg),
        Suite::Sl2Probe => {
            let (h, hp) = default_probe_pair(cfg.n);
            sl2_probe(&m, cfg, &h, &hp)
        }
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

// ---- dual pair ----------------------------------------------------------

/// The three dual-pair identities on pure `m`-monomials of degree
/// `≤ family.m_degree` (the operators do not involve `x`).
pub fn dual_pair(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = TestFamily::m_only(cfg.family.m_degree);
    let w = WeightPredicate::None;
    let (k, n) = (m.k(), m.n());
    let mut one = Vec::new();
    let mut two = Vec::new();
    let mut three = Vec::new();
    for a in 0..k {
        for i in 0..n {
            one.push(check_identity(
                "",
                &m.glk_gen(a, a, i)?,
                &m.gln_gen(i, i, a)?,
                sh,
                &fam,
                w,
            ));
        }
    }
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            for (i, j) in pairs(n) {
                let lhs = m.glk_gen(a, b, i)?.then(&m.glk_gen(b, a, j)?);
                let rhs = m.gln_gen(i, j, a)?.then(&m.gln_gen(j, i, b)?);
                two.push(check_identity("", &lhs, &rhs, sh, &fam, w));
            }
            for i in 0..n {
                let lhs = m.glk_gen(a, b, i)?.then(&m.glk_gen(b, a, i)?);
                let rhs = m.gln_gen(i, i, a)?.then(&m.gln_gen(i, i, b)?).add(&m.gln_gen(i, i, a)?);
                three.push(check_identity("", &lhs, &rhs, sh, &fam, w));
            }
        }
    }
    Ok(alloc::vec![
        cfg.check(
            Form::Common,
            IdentityReport::merge("(E_aa^(k))^(i) = (E_ii^(n))^(a)", w, &one)
        ),
        cfg.check(
            Form::Common,
            IdentityReport::merge(
                "(E_ab^(k))^(i)(E_ba^(k))^(j) = (E_ij^(n))^(a)(E_ji^(n))^(b), i≠j, a≠b",
                w,
                &two
            )
        ),
        cfg.check(
            Form::Common,
            IdentityReport::merge(
                "(E_ab^(k))^(i)(E_ba^(k))^(i) = (E_ii^(n))^(a)(E_ii^(n))^(b) + (E_ii^(n))^(a), a≠b",
                w,
                &three
            )
        ),
    ])
}

// ---- elliptic generators ------------------------------------------------

/// `[x_i, y_j] = t_ij` and the quotient relations of the elliptic
/// generators, as stated (annihilation on weight-filtered states) and in
/// exact form (identities in the operator algebra with explicit `gl_k`
/// Cartan factors `D_a`).
pub fn elliptic_generators(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let (k, n) = (m.k(), m.n());
    let none = WeightPredicate::None;
    let slk = WeightPredicate::SlkZero;
    let sln = WeightPredicate::SlnZero;
    let rows = WeightPredicate::RowsAtMostOne;
    let d: Vec<DiffOp> = (0..k).map(|a| m.row_degree_op(a)).collect::<Result<_>>()?;

    let mut xy = Vec::new();
    for (i, j) in pairs(n) {
        let lhs = m.cee_x(i)?.commutator(&m.cee_y(j)?);
        xy.push(check_identity("", &lhs, &m.cee_t(i, j)?, sh, fam, none));
    }

    // [x_i, y_i] + Σ_j t_ij and its exact value Σ_a E_aa^{(i)} D_a.
    let mut diag_rel = Vec::new();
    let mut diag_stated = Vec::new();
    let mut diag_exact = Vec::new();
    for i in 0..n {
        let mut terms = alloc::vec![m.cee_x(i)?.commutator(&m.cee_y(i)?)];
        for j in (0..n).filter(|&j| j != i) {
            terms.push(m.cee_t(i, j)?);
        }
        let rel = DiffOp::sum(terms);
        let exact = DiffOp::sum(
            (0..k)
                .map(|a| Ok(m.glk_gen(a, a, i)?.then(&d[a])))
                .collect::<Result<Vec<_>>>()?,
        );
        diag_stated.push(check_annihilates("", &rel, sh, fam, slk));
        diag_exact.push(check_identity("", &rel, &exact, sh, fam, none));
        diag_rel.push(rel);
    }

    let mut yy_stated = Vec::new();
    let mut yy_rows = Vec::new();
    for (i, j) in ordered_pairs(n) {
        let c = m.cee_y(i)?.commutator(&m.cee_y(j)?);
        yy_stated.push(check_annihilates("", &c, sh, fam, sln));
        yy_rows.push(check_annihilates("", &c, sh, fam, rows));
    }

    let sum_x = DiffOp::sum((0..n).map(|i| m.cee_x(i)).collect::<Result<Vec<_>>>()?);
    let sum_y = DiffOp::sum((0..n).map(|i| m.cee_y(i)).collect::<Result<Vec<_>>>()?);
    let sum_x_exact = DiffOp::sum((0..k).map(|a| DiffOp::mul_x(RatFunc::var(a)).then(&d[a])));
    let mut sy = Vec::new();
    for a in 0..k {
        sy.push(DiffOp::der_x(a).then(&d[a]).scale(-Q::one()));
        for b in a + 1..k {
            sy.push(DiffOp::mul_x(RatFunc::inv_diff(b, a)).then(&d[a].sub(&d[b])));
        }
    }
    let sum_y_exact = DiffOp::sum(sy);

    Ok(alloc::vec![
        cfg.check(
            Form::Common,
            IdentityReport::merge("[x_i, y_j] = t_ij (i≠j)", none, &xy)
        ),
        cfg.check(
            Form::Stated,
            IdentityReport::merge("[x_i, y_i] + Σ_j t_ij annihilates slk-zero states", slk, &diag_stated)
        ),
        cfg.check(
            Form::Stated,
            IdentityReport::merge("[y_i, y_j] annihilates sln-zero states", sln, &yy_stated)
        ),
        cfg.check(
            Form::Stated,
            check_annihilates("Σ_i x_i annihilates slk-zero states", &sum_x, sh, fam, slk)
        ),
        cfg.check(
            Form::Stated,
            check_annihilates("Σ_i y_i annihilates slk-zero states", &sum_y, sh, fam, slk)
        ),
        cfg.check(
            Form::Exact,
            IdentityReport::merge("[x_i, y_i] + Σ_j t_ij = Σ_a E_aa^(i) D_a", none, &diag_exact)
        ),
        cfg.check(
            Form::Exact,
            check_identity("Σ_i x_i = Σ_a x_a D_a", &sum_x, &sum_x_exact, sh, fam, none)
        ),
        cfg.check(
            Form::Exact,
            check_identity(
                "Σ_i y_i = −Σ_a ∂_a D_a + Σ_{a<b} (D_a − D_b)/(x_b − x_a)",
                &sum_y,
                &sum_y_exact,
                sh,
                fam,
                none
            )
        ),
        cfg.check(
            Form::Exact,
            IdentityReport::merge("[y_i, y_j] annihilates row-degree ≤ 1 states", rows, &yy_rows)
        ),
    ])
}

// ---- main relation ------------------------------------------------------

/// Correction term of the main relation:
/// `½ Σ_a (δ_bc E_ad^{(a)} + δ_ad E_cb^{(a)}) ∘ (D_a − 1)`.
pub fn main_relation_correction(m: &Model, a: usize, b: usize, c: usize, d: usize) -> Result<DiffOp> {
    let mut terms = Vec::new();
    for r in 0..m.k() {
        let shift = m.row_degree_op(r)?.sub(&DiffOp::identity());
        if b == c {
            terms.push(m.gln_gen(a, d, r)?.then(&shift));
        }
        if a == d {
            terms.push(m.gln_gen(c, b, r)?.then(&shift));
        }
    }
    Ok(DiffOp::sum(terms).scale(qr(1, 2)))
}

/// Admissible index tuples `(a, b, c, d)`: `a ≠ b`, `c ≠ d`, `(a, b) ≠ (d, c)`.
pub fn admissible_tuples(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (a, b) in pairs(n) {
        for (c, d) in pairs(n) {
            if !(a == d && b == c) {
                out.push((a, b, c, d));
            }
        }
    }
    out
}

pub fn main_relation(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let none = WeightPredicate::None;
    let mut stated = Vec::new();
    let mut exact = Vec::new();
    let mut rows = Vec::new();
    for (a, b, c, d) in admissible_tuples(m.n()) {
        let rel = m.main_relation(a, b, c, d)?;
        let direct = check_annihilates("", &rel, sh, fam, none);
        rows.push(check_annihilates("", &rel, sh, fam, WeightPredicate::RowsAtMostOne));
        if b == c || a == d {
            let corr = main_relation_correction(m, a, b, c, d)?;
            exact.push(check_identity("", &rel, &corr, sh, fam, none));
        } else {
            // The correction vanishes: the exact form is the stated one.
            exact.push(direct.clone());
        }
        stated.push(direct);
    }
    Ok(alloc::vec![
        cfg.check(
            Form::Stated,
            IdentityReport::merge("main relation annihilates all test states", none, &stated)
        ),
        cfg.check(
            Form::Exact,
            IdentityReport::merge(
                "main relation = ½ Σ_a (δ_bc E_ad^(a) + δ_ad E_cb^(a))(D_a − 1)",
                none,
                &exact
            )
        ),
        cfg.check(
            Form::Exact,
            IdentityReport::merge(
                "main relation annihilates row-degree ≤ 1 states",
                WeightPredicate::RowsAtMostOne,
                &rows
            )
        ),
    ])
}

// ---- Z_n ----------------------------------------------------------------

pub fn zn(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let none = WeightPredicate::None;
    let n = m.n();
    let z = m.ddca_zn()?;
    let (i, j, l) = (0, 1, 2 % n);
    let central = [
        ("[Z_n, K(E_12)] = 0", m.ddca_k(i, j)?),
        ("[Z_n, Q(E_12)] = 0", m.ddca_q(i, j)?),
        ("[Z_n, E_13] = 0", m.e(i, l)?),
    ];
    let mut out = Vec::new();
    for (name, o) in central {
        out.push(cfg.check(Form::Common, check_annihilates(name, &z.commutator(&o), sh, fam, none)));
    }
    let two_n1 = qi(2 * (n as i64 + 1));
    let euler = m.euler().scale(two_n1.clone());
    out.push(cfg.check(
        Form::Stated,
        check_identity("Z_n = 2(n+1)·Euler on homogeneous states", &z, &euler, sh, fam, none),
    ));
    let mut extra = Vec::new();
    for a in 0..m.k() {
        let da = m.row_degree_op(a)?;
        extra.push(da.then(&da.sub(&DiffOp::identity())).scale(qi(2)));
    }
    let exact = euler.add(&DiffOp::sum(extra));
    out.push(cfg.check(
        Form::Exact,
        check_identity("Z_n = 2(n+1)·Euler + 2 Σ_a D_a(D_a − 1)", &z, &exact, sh, fam, none),
    ));
    out.push(cfg.check(
        Form::Exact,
        check_identity(
            "Z_n = 2(n+1)·Euler on row-degree ≤ 1 states",
            &z,
            &euler,
            sh,
            fam,
            WeightPredicate::RowsAtMostOne,
        ),
    ));
    out.push(cfg.check(
        Form::Probe,
        check_identity(
            "Z_n acts by the scalar 2(n+1)",
            &z,
            &DiffOp::scalar(two_n1),
            sh,
            fam,
            none,
        ),
    ));
    Ok(out)
}

// ---- degree-3 bracket identity ------------------------------------------

/// `Σ_{α>0} (α, h) ad(Q(α∨/2))³(κ_α)` minus
/// `Σ_{p+q=2} C(2,p)(−1)^p [Q(h), Ω_{p,q}]`, both sides returned.
pub fn lemma_qv_sides(m: &Model, h: &GlElement) -> Result<(DiffOp, DiffOp)> {
    let n = m.n();
    let qh = m.q_of(h)?;
    let mut lhs = Vec::new();
    for (i, j) in ordered_pairs(n) {
        let c = h.get(i, i) - h.get(j, j);
        if c.is_zero() {
            continue;
        }
        let half = m.q_of(&GlElement::h(n, i, j))?.scale(qr(1, 2));
        lhs.push(half.ad_pow(3, &m.kappa(i, j)?).scale(c));
    }
    let rhs = DiffOp::sum([
        qh.commutator(&m.omega(0, 2)?),
        qh.commutator(&m.omega(1, 1)?).scale(qi(-2)),
        qh.commutator(&m.omega(2, 0)?),
    ]);
    Ok((DiffOp::sum(lhs), rhs))
}

fn binomial_report(bound: usize) -> IdentityReport {
    let bad = crate::elliptic::consts::binomial_identity_counterexample(bound);
    let cases = (0..=bound).map(|n| (n + 1) * (n + 2) / 2).sum();
    IdentityReport {
        name: format!("Σ_m C(m,j)C(n−m,k−j) = C(n+1,k+1), 0 ≤ j ≤ k ≤ n ≤ {bound}"),
        weight: WeightPredicate::None,
        states_tested: cases,
        states_skipped: 0,
        failures: usize::from(bad.is_some()),
        counterexample: None,
    }
}

pub fn lemma_qv(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let n = m.n();
    if n < 3 {
        return Err(Error::Domain("the degree-3 bracket identity needs n ≥ 3".into()));
    }
    let none = WeightPredicate::None;
    let rows = WeightPredicate::RowsAtMostOne;
    let hs = [GlElement::h(n, 0, 1), GlElement::h(n, 0, n - 1)];
    let mut stated = Vec::new();
    let mut exact = Vec::new();
    for h in &hs {
        let (l, r) = lemma_qv_sides(m, h)?;
        stated.push(check_identity("", &l, &r, sh, fam, none));
        exact.push(check_identity("", &l, &r, sh, fam, rows));
    }
    let omega = m.omega(1, 1)?.commutator(&m.e(0, 2)?);
    let word = BracketWord::bracket(BracketWord::elem(0, 1), BracketWord::elem(1, 0));
    let h01 = GlElement::h(n, 0, 1);
    let mode = m.current_mode(&h01, &word, 1, CurrentKind::U)?;
    let q01 = m.ddca_q(0, 1)?;
    let qq = q01.commutator(&m.ddca_q(0, 2)?);
    let k01 = m.ddca_k(0, 1)?;
    let k12 = m.ddca_k(1, 2)?;
    let kk_word = BracketWord::bracket(BracketWord::elem(0, 1), BracketWord::elem(1, 2));
    let kk_mode = m.current_mode(&GlElement::elementary(n, 0, 2), &kk_word, 2, CurrentKind::V)?;
    Ok(alloc::vec![
        cfg.check(
            Form::Stated,
            IdentityReport::merge(
                "Σ_α (α,h) ad(Q(α∨/2))³(κ_α) = Σ_{p+q=2} C(2,p)(−1)^p [Q(h), Ω_{p,q}]",
                none,
                &stated
            )
        ),
        cfg.check(
            Form::Exact,
            IdentityReport::merge(
                "Σ_α (α,h) ad(Q(α∨/2))³(κ_α) = Σ_{p+q=2} C(2,p)(−1)^p [Q(h), Ω_{p,q}] on row-degree ≤ 1 states",
                rows,
                &exact
            )
        ),
        cfg.check(
            Form::Stated,
            check_annihilates("[Ω_{1,1}, E_13] = 0", &omega, sh, fam, none)
        ),
        cfg.check(
            Form::Exact,
            check_annihilates("[Ω_{1,1}, E_13] = 0 on row-degree ≤ 1 states", &omega, sh, fam, rows)
        ),
        cfg.check(
            Form::Common,
            check_identity("H_12⊗u = Q(H_12)", &mode, &m.q_of(&h01)?, sh, fam, none)
        ),
        cfg.check(
            Form::Stated,
            check_annihilates("[Q(E_12), Q(E_13)] = 0", &qq, sh, fam, none)
        ),
        cfg.check(
            Form::Exact,
            check_annihilates("[Q(E_12), Q(E_13)] = 0 on row-degree ≤ 1 states", &qq, sh, fam, rows)
        ),
        cfg.check(
            Form::Common,
            check_identity(
                "[K(E_12), K(E_23)] = E_13⊗v²",
                &k01.commutator(&k12),
                &kk_mode,
                sh,
                fam,
                none
            )
        ),
        cfg.check(Form::Common, binomial_report(12)),
    ])
}

// ---- elliptic Lie algebra relations through D_{λ,β}(sl_n) ---------------

fn eps_diff(n: usize, i: usize, j: usize) -> Vec<Q> {
    let mut u = alloc::vec![Q::zero(); n];
    u[i] += Q::one();
    u[j] -= Q::one();
    u
}

fn simple_cartan_basis(n: usize) -> Vec<Vec<Q>> {
    (0..n - 1).map(|r| eps_diff(n, r, r + 1)).collect()
}

/// Traceless vectors orthogonal to `ε_i − ε_j`.
fn orthogonal_probes(n: usize, i: usize, j: usize) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    for l in (0..n).filter(|&l| l != i && l != j) {
        let mut u = alloc::vec![Q::zero(); n];
        u[i] = Q::one();
        u[j] = Q::one();
        u[l] = qi(-2);
        out.push(u);
    }
    out
}

pub fn aell(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let n = m.n();
    let sln = WeightPredicate::SlnZero;
    let rows = WeightPredicate::RowsAtMostOne;
    let mut t = alloc::collections::BTreeMap::new();
    for (i, j) in ordered_pairs(n) {
        t.insert((i, j), m.aell_image_t(i, j)?);
    }
    let tt = |i: usize, j: usize| t[&(i.min(j), i.max(j))].clone();
    let basis = simple_cartan_basis(n);
    let xs: Vec<DiffOp> = basis.iter().map(|u| m.aell_image_x(u)).collect::<Result<_>>()?;
    let ys: Vec<DiffOp> = basis.iter().map(|u| m.aell_image_y(u)).collect::<Result<_>>()?;

    // (1): [t_α, Σ_{β∈Ψ⁺} t_β] = 0 for rank-2 subsystems Ψ ∋ α.
    let mut r1 = Vec::new();
    for (i, j) in ordered_pairs(n) {
        for l in (0..n).filter(|&l| l != i && l != j) {
            r1.push(tt(i, j).commutator(&DiffOp::sum([tt(i, j), tt(i, l), tt(j, l)])));
        }
        for (p, q) in ordered_pairs(n) {
            if p != i && p != j && q != i && q != j {
                r1.push(tt(i, j).commutator(&tt(p, q)));
            }
        }
    }
    // (2)
    let mut r2 = Vec::new();
    for r in 0..basis.len() {
        for s in r + 1..basis.len() {
            r2.push(xs[r].commutator(&xs[s]));
            r2.push(ys[r].commutator(&ys[s]));
        }
    }
    // (3): [y(u), x(v)] − σ Σ_γ (v,γ)(u,γ) t_γ with σ = +1 as stated, −1 exact.
    let mut r3_stated = Vec::new();
    let mut r3_exact = Vec::new();
    for (r, u) in basis.iter().enumerate() {
        for (s, v) in basis.iter().enumerate() {
            let mut sum = Vec::new();
            for (i, j) in ordered_pairs(n) {
                let c = (&v[i] - &v[j]) * (&u[i] - &u[j]);
                if !c.is_zero() {
                    sum.push(tt(i, j).scale(c));
                }
            }
            let rhs = DiffOp::sum(sum);
            let lhs = ys[r].commutator(&xs[s]);
            r3_stated.push(lhs.sub(&rhs));
            r3_exact.push(lhs.add(&rhs));
        }
    }
    // (4)
    let mut r4 = Vec::new();
    for (i, j) in ordered_pairs(n) {
        for u in orthogonal_probes(n, i, j) {
            r4.push(tt(i, j).commutator(&m.aell_image_x(&u)?));
            r4.push(tt(i, j).commutator(&m.aell_image_y(&u)?));
        }
    }
    let run = |ops: &[DiffOp], w| -> Vec<IdentityReport> {
        ops.iter().map(|o| check_annihilates("", o, sh, fam, w)).collect()
    };
    let pair = |name: &str, ops: &[DiffOp]| {
        [
            cfg.check(
                Form::Stated,
                IdentityReport::merge(&format!("{name} on sln-zero states"), sln, &run(ops, sln)),
            ),
            cfg.check(
                Form::Exact,
                IdentityReport::merge(&format!("{name} on row-degree ≤ 1 states"), rows, &run(ops, rows)),
            ),
        ]
    };
    let mut out = Vec::new();
    out.extend(pair("(1) [t_α, Σ_{β∈Ψ⁺} t_β] = 0", &r1));
    out.extend(pair("(2) [x(u), x(v)] = [y(u), y(v)] = 0", &r2));
    let r3 = "(3) [y(u), x(v)] = Σ_γ (v,γ)(u,γ) t_γ";
    out.push(cfg.check(
        Form::Stated,
        IdentityReport::merge(&format!("{r3} on sln-zero states"), sln, &run(&r3_stated, sln)),
    ));
    out.push(cfg.check(
        Form::Probe,
        IdentityReport::merge(&format!("{r3} on row-degree ≤ 1 states"), rows, &run(&r3_stated, rows)),
    ));
    out.push(cfg.check(
        Form::Exact,
        IdentityReport::merge(
            "(3) [y(u), x(v)] = −Σ_γ (v,γ)(u,γ) t_γ on row-degree ≤ 1 states",
            rows,
            &run(&r3_exact, rows),
        ),
    ));
    out.extend(pair("(4) [t_α, x(u)] = [t_α, y(u)] = 0 for (α,u) = 0", &r4));
    Ok(out)
}

// ---- duality ------------------------------------------------------------

/// The abelian correction at ad-power 0 for the root `ε_i − ε_j`:
/// stated `(E_ii + E_jj)/n − 1/n²`, exact `(E_ii + E_jj)/n − Σ_e E_ee/n²`.
pub fn abelian_term(m: &Model, i: usize, j: usize, form: Form) -> Result<DiffOp> {
    let n = m.n() as i64;
    let diag = m.e(i, i)?.add(&m.e(j, j)?).scale(qr(1, n));
    Ok(match form {
        Form::Exact => diag.sub(&m.euler().scale(qr(1, n * n))),
        _ => diag.sub(&DiffOp::scalar(qr(1, n * n))),
    })
}

/// Residual operator of the duality comparison for the root `ε_i − ε_j` at
/// ad-power `p`:
/// `ad(x_i)^p(a₁ι₁ t_ij) − σ·ad(K(ε_i − ε̄))^p(a₂ι₂ t_ij) − [p = 0]·𝒜_ij`
/// with `σ = +1` for the stated form and `σ = −1` for the exact form.
pub fn duality_residual_op(m: &Model, i: usize, j: usize, p: usize, form: Form) -> Result<DiffOp> {
    let n = m.n();
    let mut u = alloc::vec![qr(-1, n as i64); n];
    u[i] += Q::one();
    let x_left = m.cee_x(i)?;
    let x_right = m.k_of(&GlElement::diagonal(&u))?;
    let left = x_left.ad_pow(p, &m.cee_t(i, j)?);
    let right = x_right.ad_pow(p, &m.aell_image_t(i, j)?);
    let mut r = match form {
        Form::Exact => left.add(&right),
        _ => left.sub(&right),
    };
    if p == 0 {
        r = r.sub(&abelian_term(m, i, j, form)?);
    }
    Ok(r)
}

/// The `du_i` comparisons: both sides send `x(u)` and `y(u)` to the same
/// operators.
pub fn duality_du_checks(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let none = WeightPredicate::None;
    let mut dx = Vec::new();
    let mut dy = Vec::new();
    for u in simple_cartan_basis(m.n()) {
        dx.push(check_identity(
            "",
            &m.cee_x_of(&u)?,
            &m.aell_image_x(&u)?,
            sh,
            fam,
            none,
        ));
        dy.push(check_identity(
            "",
            &m.cee_y_of(&u)?,
            &m.aell_image_y(&u)?,
            sh,
            fam,
            none,
        ));
    }
    Ok(alloc::vec![
        cfg.check(
            Form::Common,
            IdentityReport::merge("du: a₁ι₁(x(u)) = a₂ι₂(x(u))", none, &dx)
        ),
        cfg.check(
            Form::Common,
            IdentityReport::merge("du: a₁ι₁(y(u)) = a₂ι₂(y(u))", none, &dy)
        ),
    ])
}

/// The stated and exact coefficient checks for the root `ε_i − ε_j` at
/// ad-power `p`.
pub fn duality_root_checks(m: &Model, cfg: &SuiteConfig, i: usize, j: usize, p: usize) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let stated = duality_residual_op(m, i, j, p, Form::Stated)?;
    let exact = duality_residual_op(m, i, j, p, Form::Exact)?;
    let label = format!("α = ε_{}−ε_{}, p = {p}", i + 1, j + 1);
    Ok(alloc::vec![
        cfg.check(
            Form::Stated,
            check_annihilates(
                &format!("{label}: a₁ι₁ − a₂ι₂ coefficient (slk-zero)"),
                &stated,
                sh,
                fam,
                WeightPredicate::SlkZero,
            ),
        ),
        cfg.check(
            Form::Exact,
            check_annihilates(
                &format!("{label}: a₁ι₁ + a₂ι₂ coefficient (row-degree ≤ 1)"),
                &exact,
                sh,
                fam,
                WeightPredicate::RowsAtMostOne,
            ),
        ),
    ])
}

pub fn duality(m: &Model, cfg: &SuiteConfig) -> Result<Vec<SuiteCheck>> {
    let mut out = duality_du_checks(m, cfg)?;
    for (i, j) in ordered_pairs(m.n()) {
        for p in 0..=cfg.ad_order {
            out.extend(duality_root_checks(m, cfg, i, j, p)?);
        }
    }
    Ok(out)
}

// ---- sl_2 probe -----------------------------------------------------------

/// Default orthogonal Cartan pair `(h, h′)` for the probe.
pub fn default_probe_pair(n: usize) -> (GlElement, GlElement) {
    let h = GlElement::h(n, 0, 1);
    let hp = if n >= 4 {
        GlElement::h(n, n - 2, n - 1)
    } else {
        let mut u = alloc::vec![Q::one(); n];
        u[n - 1] = -qi(n as i64 - 1);
        GlElement::diagonal(&u)
    };
    (h, hp)
}

/// `(λ/4) Σ_{p+q=2} Σ_{α∈Φ} c_α S(X_α⊗u^p, X_{−α}⊗u^q)` with weights `c_α`.
fn symmetric_mode_sum(m: &Model, weight: impl Fn(usize, usize) -> Q) -> Result<DiffOp> {
    let mut terms = Vec::new();
    for (i, j) in pairs(m.n()) {
        let c = weight(i, j);
        if c.is_zero() {
            continue;
        }
        for p in 0..=2 {
            let a = m.root_mode_u(i, j, p)?;
            let b = m.root_mode_u(j, i, 2 - p)?;
            terms.push(a.sym(&b).scale(c.clone()));
        }
    }
    Ok(DiffOp::sum(terms).scale(m.lambda() / qi(4)))
}

/// `Ẽ(h) = (1/(h,h)) ([K(h), h⊗u³] − (λ/4) Σ_{p+q=2} Σ_α (h,α)² S(X_α⊗u^p, X_{−α}⊗u^q))`.
pub fn tilde_e(m: &Model, h: &GlElement) -> Result<DiffOp> {
    let hh = h.trace_form(h);
    if hh.is_zero() {
        return Err(Error::Domain("Ẽ(h) needs (h, h) ≠ 0".into()));
    }
    let root = |i: usize, j: usize| h.get(i, i) - h.get(j, j);
    let first = m.k_of(h)?.commutator(&m.cartan_mode_u(h, 3)?);
    let second = symmetric_mode_sum(m, |i, j| root(i, j) * root(i, j))?;
    Ok(first.sub(&second).scale(Q::one() / hh))
}

/// Probes the `sl_2`-triple statements at the built-in parameters; never
/// asserted (they are proved for `β = λ/2`, while the model has `β = n/4`).
pub fn sl2_probe(m: &Model, cfg: &SuiteConfig, h: &GlElement, hp: &GlElement) -> Result<Vec<SuiteCheck>> {
    let sh = m.shape();
    let fam = &cfg.family;
    let rows = WeightPredicate::RowsAtMostOne;
    let n = m.n();
    let rs = crate::rootsys::RootSystem::from_label("A", n - 1)?;
    let tc = crate::constants::tilde_c_general(&rs)?;
    let tc = Q::new(BigInt::from(*tc.numer()), BigInt::from(*tc.denom()));
    let c = m.lambda() * m.lambda() / qi(4) * tc;
    let e = tilde_e(m, h)?;
    let lhs = e.commutator(&m.k_of(hp)?);
    let rhs = m.q_of(hp)?.scale(c.clone());
    let mut out = alloc::vec![SuiteCheck {
        form: Form::Probe,
        status: Status::Probe,
        report: check_identity(&format!("[Ẽ(h), K(h′)] = C·Q(h′), C = {c}"), &lhs, &rhs, sh, fam, rows),
    }];
    let e2 = tilde_e(m, hp)?;
    out.push(SuiteCheck {
        form: Form::Probe,
        status: Status::Probe,
        report: check_identity("Ẽ(h) = Ẽ(h′)", &e, &e2, sh, fam, rows),
    });
    if h.trace_form(hp).is_zero() {
        let root = |g: &GlElement, i: usize, j: usize| g.get(i, i) - g.get(j, j);
        let lhs = m.k_of(hp)?.commutator(&m.cartan_mode_u(h, 3)?);
        let rhs = symmetric_mode_sum(m, |i, j| root(h, i, j) * root(hp, i, j))?;
        out.push(SuiteCheck {
            form: Form::Probe,
            status: Status::Probe,
            report: check_identity(
                "[h′⊗v, h⊗u³] = (λ/4) Σ (h,α)(h′,α) S(X_α⊗u^p, X_−α⊗u^q)",
                &lhs,
                &rhs,
                sh,
                fam,
                rows,
            ),
        });
    }
    Ok(out)
}

/// Short text rendering of a suite run.
pub fn render(checks: &[SuiteCheck]) -> String {
    let mut s = String::new();
    for c in checks {
        s.push_str(c.status.label());
        s.push_str("  ");
        s.push_str(&c.report.summary());
        s.push('\n');
    }
    s
}
