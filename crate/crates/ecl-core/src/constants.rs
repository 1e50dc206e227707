//! The structure constant `C̃` attached to a root system, by three routes.
//!
//! * [`tilde_c_general`] sums
//!   `(1 − (α,β)²/((α,α)(β,β)))·((β,β)² + (α,α)²)·(α+β,α+β)` over ordered
//!   pairs with `α+β ∈ Φ` and divides by `4·r·(r−1)`, `r` the rank.
//! * [`tilde_c_classified`] groups the same pairs by their squared-length
//!   class `((α,α),(β,β),(α+β,α+β))`; every class has a single weight, which
//!   depends only on the three lengths because `(α,β)` is determined by them.
//! * [`tilde_c_bracket`] evaluates
//!   `Σ_{α,β} ((α,β)² − (α,α)(β,β))·([X_β,X_{−α}] | [X_{−β},X_α]) / (r(r−1))`
//!   with Chevalley constants `c²_{αβ} = q(r+1)(α+β,α+β)/(β,β)` read off root
//!   strings, root vectors normalised by `(X_α|X_{−α}) = 1`, and the invariant
//!   form `(x_α | x_{−α}) = 2/(α,α)` on Chevalley generators.
//!
//! The dependent constant `C` is a multiple of `λ²`; it is reported as
//! `C/λ² = C̃/4`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{Family, PairClass, Rat, RootSystem};

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    GeneralFormula,
    ClassifiedSum,
    BracketKilling,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::GeneralFormula => "general_formula",
            Method::ClassifiedSum => "classified_sum",
            Method::BracketKilling => "bracket_killing",
        }
    }
}

/// All data computed for one root system.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantReport {
    pub family: Family,
    pub rank: usize,
    /// `C̃` by each method, in [`Method`] order.
    pub tilde_c: Vec<(Method, Rat)>,
    /// `C/λ² = C̃/4`, from the general formula.
    pub c_over_lambda2: Rat,
    /// Ordered-pair classification with per-class weights and counts.
    pub classes: Vec<ClassRow>,
    /// Whether the three methods agree exactly.
    pub agree: bool,
}

/// One row of the pair classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassRow {
    pub class: PairClass,
    pub count: usize,
    pub weight: Rat,
}

fn normaliser(rs: &RootSystem) -> Result<Rat> {
    let r = rs.rank() as i64;
    if r < 2 {
        return Err(Error::Domain(
            "the constant divides by rank·(rank−1); rank 1 is excluded".to_string(),
        ));
    }
    Ok(Rat::from_integer(r * (r - 1)))
}

fn pair_weight(aa: Rat, bb: Rat, ab: Rat, ss: Rat) -> Rat {
    (Rat::one() - ab * ab / (aa * bb)) * (bb * bb + aa * aa) * ss
}

/// `C̃` by direct enumeration of ordered pairs with `α+β ∈ Φ`.
pub fn tilde_c_general(rs: &RootSystem) -> Result<Rat> {
    let norm = normaliser(rs)?;
    let roots = rs.roots();
    let mut sum = Rat::zero();
    for (i, j) in rs.sum_pairs() {
        let (a, b) = (&roots[i], &roots[j]);
        let s = a.add(b);
        sum += pair_weight(rs.len2(a), rs.len2(b), rs.ip(a, b), rs.len2(&s));
    }
    Ok(sum / (Rat::from_integer(4) * norm))
}

/// Weight carried by every pair in a squared-length class.
///
/// With `a = (α,α)`, `b = (β,β)`, `c = (α+β,α+β)`, the inner product is
/// `(α,β) = (c − a − b)/2`, so the summand of the general formula is a function
/// of the class alone.  For the lengths that occur this yields `12` (all
/// long), `4` (short+short=long, orthogonal), `5/2` (long+short=short with
/// short length 1), `3/2` (three short roots of length 1), and for G2
/// `20/27`, `4/3`, `4/9`.
pub fn class_weight(class: &PairClass) -> Rat {
    let (a, b, c) = *class;
    let ab = (c - a - b) / Rat::from_integer(2);
    pair_weight(a, b, ab, c)
}

/// `C̃` from the class counts of [`RootSystem::classify_sum_pairs`].
pub fn tilde_c_classified(rs: &RootSystem) -> Result<Rat> {
    let norm = normaliser(rs)?;
    let sum = rs
        .classify_sum_pairs()
        .iter()
        .map(|(k, &n)| class_weight(k) * Rat::from_integer(n as i64))
        .fold(Rat::zero(), |a, b| a + b);
    Ok(sum / (Rat::from_integer(4) * norm))
}

/// `c²_{αβ}` for `α+β ∈ Φ`, from the α-string through β.
pub fn chevalley_c_squared(rs: &RootSystem, ai: usize, bi: usize) -> Result<Rat> {
    let roots = rs.roots();
    let (a, b) = (&roots[ai], &roots[bi]);
    let s = a.add(b);
    if !rs.is_root(&s) {
        return Err(Error::Domain("α+β is not a root".to_string()));
    }
    let (r, q) = rs.root_string(a, b)?;
    Ok(Rat::from_integer(q * (r + 1)) * rs.len2(&s) / rs.len2(b))
}

/// `C̃` through Chevalley structure constants and the invariant form.
///
/// For roots `α, β` the pairing `([X_β,X_{−α}] | [X_{−β},X_α])` vanishes
/// unless `β−α ∈ Φ` (the case `β = α` is killed by the prefactor).  With
/// `X_γ = √((γ,γ)/2)·x_γ`, `[x_β, x_{−α}] = c_{β,−α}x_{β−α}`,
/// `c_{−β,α} = −c_{β,−α}` and `(x_γ|x_{−γ}) = 2/(γ,γ)`, the pairing equals
/// `−((α,α)(β,β)/4)·c²_{β,−α}·2/(β−α,β−α)`.
pub fn tilde_c_bracket(rs: &RootSystem) -> Result<Rat> {
    let norm = normaliser(rs)?;
    let roots = rs.roots();
    let quarter = Rat::new(1, 4);
    let mut sum = Rat::zero();
    for a in roots.iter() {
        let neg_a = a.neg();
        let nai = rs
            .root_index(&neg_a)
            .ok_or_else(|| Error::Internal("−α missing".to_string()))?;
        for (bi, b) in roots.iter().enumerate() {
            let d = b.add(&neg_a);
            if !rs.is_root(&d) {
                continue;
            }
            let (aa, bb, ab) = (rs.len2(a), rs.len2(b), rs.ip(a, b));
            let c2 = chevalley_c_squared(rs, bi, nai)?;
            let pairing = -(aa * bb * quarter) * c2 * Rat::from_integer(2) / rs.len2(&d);
            sum += (ab * ab - aa * bb) * pairing;
        }
    }
    Ok(sum / norm)
}

/// Runs all three methods and assembles the classification table.
pub fn constant_report(rs: &RootSystem) -> Result<ConstantReport> {
    let g = tilde_c_general(rs)?;
    let c = tilde_c_classified(rs)?;
    let b = tilde_c_bracket(rs)?;
    let classes = rs
        .classify_sum_pairs()
        .into_iter()
        .map(|(class, count)| ClassRow {
            weight: class_weight(&class),
            class,
            count,
        })
        .collect();
    Ok(ConstantReport {
        family: rs.family(),
        rank: rs.rank(),
        agree: g == c && c == b,
        tilde_c: alloc::vec![
            (Method::GeneralFormula, g),
            (Method::ClassifiedSum, c),
            (Method::BracketKilling, b)
        ],
        c_over_lambda2: g / Rat::from_integer(4),
        classes,
    })
}

/// Class counts as a plain map (convenience for reports).
pub fn class_counts(rs: &RootSystem) -> BTreeMap<PairClass, usize> {
    rs.classify_sum_pairs()
}
