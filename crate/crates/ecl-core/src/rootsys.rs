//! Finite crystallographic root systems with exact rational inner products.
//!
//! Every root is an integer vector in a per-type ambient lattice; the
//! bilinear form is a rational Gram matrix on that lattice.  Irrational
//! scalings (the `1/√2` of type C, the `1/√3` of type G2, the halves of F4)
//! are folded into the Gram matrix, so every inner product is an exact
//! rational.  Long roots always have squared length `2`.
//!
//! | family | lattice            | Gram       | short length² |
//! |--------|--------------------|------------|---------------|
//! | A, B, D| `Z^n` standard      | `I`        | 1 (B only)    |
//! | C      | `±e_i±e_j, ±2e_i`   | `I/2`      | 1             |
//! | F4     | doubled coordinates | `I/4`      | 1             |
//! | G2     | `Z^3`               | `I/3`      | 2/3           |
//! | E6–E8  | simple-root basis   | Cartan     | —             |
//!
//! The full root list is produced by closing the simple roots under simple
//! reflections; its size is checked against the known count.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used by the root-system layer.
pub type Rat = Rational64;

/// Type family of a root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    /// Parses a family label such as `"B"`, `"E7"` or `"g2"`.
    pub fn parse(label: &str) -> Result<Family> {
        let l = label.trim().to_ascii_uppercase();
        Ok(match l.as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E6" => Family::E6,
            "E7" => Family::E7,
            "E8" => Family::E8,
            "F4" => Family::F4,
            "G2" => Family::G2,
            _ => {
                return Err(Error::Unsupported {
                    label: label.to_string(),
                    rank: 0,
                })
            }
        })
    }

    /// Rank forced by an exceptional family, `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            Family::F4 => Some(4),
            Family::G2 => Some(2),
            _ => None,
        }
    }

    /// Short label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E6 => "E6",
            Family::E7 => "E7",
            Family::E8 => "E8",
            Family::F4 => "F4",
            Family::G2 => "G2",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A root, stored as an integer coordinate vector in the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i64>);

impl Root {
    /// Coordinate-wise negation.
    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// Coordinate-wise sum.
    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, k: i64, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    /// Coordinates as rationals.
    pub fn to_rat(&self) -> Vec<Rat> {
        self.0.iter().map(|&c| Rat::from_integer(c)).collect()
    }
}

/// Squared-length key of an ordered pair `(α, β)` with `α+β` a root:
/// `((α,α), (β,β), (α+β,α+β))`.
pub type PairClass = (Rat, Rat, Rat);

/// A finite reduced crystallographic root system.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    gram: Vec<Vec<Rat>>,
    roots: Vec<Root>,
    positive: Vec<Root>,
    simple: Vec<Root>,
    index: BTreeMap<Root, usize>,
}

impl RootSystem {
    /// Builds the root system of `(family, rank)`.
    ///
    /// Supported: `A_{n-1}` (`n ≥ 2`, so `rank ≥ 1`), `B_n` and `C_n`
    /// (`n ≥ 2`), `D_n` (`n ≥ 3`), and the exceptional families at their
    /// own rank.
    pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
        let unsupported = || Error::Unsupported {
            label: family.label().to_string(),
            rank,
        };
        if let Some(r) = family.fixed_rank() {
            if r != rank {
                return Err(unsupported());
            }
        }
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            _ => true,
        };
        // Keep the integer arithmetic comfortably inside i64 and the closure small.
        if !ok || rank > 12 {
            return Err(unsupported());
        }
        let (gram, simple) = simple_data(family, rank);
        let roots = weyl_closure(&gram, &simple);
        let expected = expected_root_count(family, rank);
        if roots.len() != expected {
            return Err(Error::Internal(alloc::format!(
                "{family}{rank}: orbit closure produced {} roots, expected {expected}",
                roots.len()
            )));
        }
        let mut rs = RootSystem {
            family,
            rank,
            gram,
            roots,
            positive: Vec::new(),
            simple,
            index: BTreeMap::new(),
        };
        rs.roots.sort();
        rs.index = rs.roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        rs.positive = rs.orient_positive()?;
        rs.validate()?;
        Ok(rs)
    }

    /// Convenience wrapper taking a textual family label.
    pub fn from_label(label: &str, rank: usize) -> Result<RootSystem> {
        let family = Family::parse(label).map_err(|_| Error::Unsupported {
            label: label.to_string(),
            rank,
        })?;
        RootSystem::build(family, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Rank, i.e. the dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient lattice.
    pub fn ambient_dim(&self) -> usize {
        self.gram.len()
    }

    /// The Gram matrix of the ambient lattice.
    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// All roots, in lexicographic order of their coordinates.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Positive roots, in lexicographic order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    /// Simple roots, in the standard numbering of the family.
    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// Whether `v` is a root.
    pub fn is_root(&self, v: &Root) -> bool {
        self.index.contains_key(v)
    }

    /// Position of a root in [`RootSystem::roots`].
    pub fn root_index(&self, v: &Root) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Inner product of two lattice vectors.
    pub fn ip(&self, a: &Root, b: &Root) -> Rat {
        ip_int(&self.gram, &a.0, &b.0)
    }

    /// Inner product of two rational vectors.
    pub fn ip_rat(&self, a: &[Rat], b: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let g = &self.gram[i][j];
                if !g.is_zero() && !bj.is_zero() {
                    s += ai * g * bj;
                }
            }
        }
        s
    }

    /// Squared length `(α, α)`.
    pub fn len2(&self, a: &Root) -> Rat {
        self.ip(a, a)
    }

    /// Whether `α` is long (squared length 2).
    pub fn is_long(&self, a: &Root) -> bool {
        self.len2(a) == Rat::from_integer(2)
    }

    /// Cartan integer `⟨β, α⟩ = 2(β,α)/(α,α)`.
    pub fn cartan_integer(&self, beta: &Root, alpha: &Root) -> Rat {
        Rat::from_integer(2) * self.ip(beta, alpha) / self.len2(alpha)
    }

    /// Coroot `α∨ = 2α/(α,α)` as a rational vector.
    pub fn coroot(&self, alpha: &Root) -> Vec<Rat> {
        let f = Rat::from_integer(2) / self.len2(alpha);
        alpha.0.iter().map(|&c| f * c).collect()
    }

    /// Reflection `s_α(v) = v − ⟨v,α⟩α` of a rational vector.
    pub fn reflect(&self, alpha: &Root, v: &[Rat]) -> Result<Vec<Rat>> {
        if !self.is_root(alpha) {
            return Err(Error::Domain("reflection requires a root".to_string()));
        }
        let a = alpha.to_rat();
        let c = Rat::from_integer(2) * self.ip_rat(v, &a) / self.len2(alpha);
        Ok(v.iter().zip(&a).map(|(vi, ai)| vi - c * ai).collect())
    }

    /// Reflection of a root, returned as a root.
    pub fn reflect_root(&self, alpha: &Root, beta: &Root) -> Root {
        let c = self.cartan_integer(beta, alpha);
        debug_assert!(c.is_integer());
        beta.add_scaled(-c.to_integer(), alpha)
    }

    /// The α-string through β: maximal `(r, q)` with `β−rα, …, β+qα` roots.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> Result<(i64, i64)> {
        if !self.is_root(alpha) || !self.is_root(beta) {
            return Err(Error::Domain("root string needs two roots".to_string()));
        }
        if alpha == beta || *alpha == beta.neg() {
            return Err(Error::Domain("root string through ±α is not defined".to_string()));
        }
        let mut r = 0;
        while self.is_root(&beta.add_scaled(-(r + 1), alpha)) {
            r += 1;
        }
        let mut q = 0;
        while self.is_root(&beta.add_scaled(q + 1, alpha)) {
            q += 1;
        }
        Ok((r, q))
    }

    /// Dual Coxeter number `h∨`.
    ///
    /// Computed as `Σ_{γ>0}(γ,u)²/(u,u)` for every simple root `u`; the
    /// bilinear identity `Σ_{γ>0}(γ,u)(γ,v) = h∨(u,v)` is then verified on all
    /// pairs of simple roots.
    pub fn dual_coxeter(&self) -> Result<Rat> {
        let mut h: Option<Rat> = None;
        for u in &self.simple {
            let s: Rat = self
                .positive
                .iter()
                .map(|g| {
                    let x = self.ip(g, u);
                    x * x
                })
                .fold(Rat::zero(), |a, b| a + b);
            let val = s / self.len2(u);
            match h {
                None => h = Some(val),
                Some(h0) if h0 != val => {
                    return Err(Error::Internal(alloc::format!(
                        "dual Coxeter number depends on the probe vector: {h0} vs {val}"
                    )))
                }
                _ => {}
            }
        }
        let h = h.ok_or_else(|| Error::Internal("no simple roots".to_string()))?;
        for u in &self.simple {
            for v in &self.simple {
                let s: Rat = self
                    .positive
                    .iter()
                    .map(|g| self.ip(g, u) * self.ip(g, v))
                    .fold(Rat::zero(), |a, b| a + b);
                if s != h * self.ip(u, v) {
                    return Err(Error::Internal(
                        "Casimir identity fails on a simple-root pair".to_string(),
                    ));
                }
            }
        }
        Ok(h)
    }

    /// Counts ordered pairs `(α, β)` with `α+β ∈ Φ`, keyed by squared lengths.
    pub fn classify_sum_pairs(&self) -> BTreeMap<PairClass, usize> {
        let mut table = BTreeMap::new();
        for a in &self.roots {
            for b in &self.roots {
                let s = a.add(b);
                if self.is_root(&s) {
                    *table.entry((self.len2(a), self.len2(b), self.len2(&s))).or_insert(0) += 1;
                }
            }
        }
        table
    }

    /// All ordered pairs `(α, β)` with `α+β ∈ Φ`.
    pub fn sum_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.roots.iter().enumerate() {
            for (j, b) in self.roots.iter().enumerate() {
                if self.is_root(&a.add(b)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Expansion of a lattice vector in the simple roots.
    pub fn simple_coordinates(&self, v: &Root) -> Vec<Rat> {
        let b: Vec<Rat> = self.simple.iter().map(|s| self.ip(s, v)).collect();
        let inv = invert(&self.simple_gram()).expect("simple roots are independent");
        inv.iter()
            .map(|row| row.iter().zip(&b).map(|(x, y)| x * y).fold(Rat::zero(), |a, c| a + c))
            .collect()
    }

    /// Gram matrix of the simple roots.
    pub fn simple_gram(&self) -> Vec<Vec<Rat>> {
        self.simple
            .iter()
            .map(|a| self.simple.iter().map(|b| self.ip(a, b)).collect())
            .collect()
    }

    fn orient_positive(&self) -> Result<Vec<Root>> {
        let inv =
            invert(&self.simple_gram()).ok_or_else(|| Error::Internal("simple roots are dependent".to_string()))?;
        let mut pos = Vec::new();
        for r in &self.roots {
            let b: Vec<Rat> = self.simple.iter().map(|s| self.ip(s, r)).collect();
            let coeffs: Vec<Rat> = inv
                .iter()
                .map(|row| row.iter().zip(&b).map(|(x, y)| x * y).fold(Rat::zero(), |a, c| a + c))
                .collect();
            let nonneg = coeffs.iter().all(|c| !c.is_negative());
            let nonpos = coeffs.iter().all(|c| !c.is_positive());
            if !(nonneg ^ nonpos) || coeffs.iter().any(|c| !c.is_integer()) {
                return Err(Error::Internal(alloc::format!(
                    "root {:?} has a mixed-sign simple expansion",
                    r.0
                )));
            }
            if nonneg {
                pos.push(r.clone());
            }
        }
        Ok(pos)
    }

    fn validate(&self) -> Result<()> {
        let two = Rat::from_integer(2);
        let short = match self.family {
            Family::B | Family::C | Family::F4 => Some(Rat::one()),
            Family::G2 => Some(Rat::new(2, 3)),
            _ => None,
        };
        for r in &self.roots {
            if !self.is_root(&r.neg()) {
                return Err(Error::Internal("root list not closed under negation".to_string()));
            }
            let l = self.len2(r);
            if l != two && Some(l) != short {
                return Err(Error::Internal(alloc::format!("unexpected squared length {l}")));
            }
        }
        if 2 * self.positive.len() != self.roots.len() {
            return Err(Error::Internal("positive roots are not half of all roots".to_string()));
        }
        for a in &self.roots {
            for b in &self.roots {
                if !self.cartan_integer(b, a).is_integer() {
                    return Err(Error::Internal("non-integral Cartan integer".to_string()));
                }
            }
        }
        Ok(())
    }
}

fn ip_int(gram: &[Vec<Rat>], a: &[i64], b: &[i64]) -> Rat {
    let mut s = Rat::zero();
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 {
                let g = gram[i][j];
                if !g.is_zero() {
                    s += g * (ai * bj);
                }
            }
        }
    }
    s
}

fn diag_gram(n: usize, d: Rat) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { d } else { Rat::zero() }).collect())
        .collect()
}

fn unit(n: usize, entries: &[(usize, i64)]) -> Root {
    let mut v = vec![0; n];
    for &(i, c) in entries {
        v[i] += c;
    }
    Root(v)
}

/// Gram matrix and simple roots in the ambient lattice of each family.
fn simple_data(family: Family, rank: usize) -> (Vec<Vec<Rat>>, Vec<Root>) {
    let chain = |n: usize, len: usize| -> Vec<Root> { (0..len).map(|i| unit(n, &[(i, 1), (i + 1, -1)])).collect() };
    match family {
        Family::A => {
            let n = rank + 1;
            (diag_gram(n, Rat::one()), chain(n, rank))
        }
        Family::B => {
            let mut s = chain(rank, rank - 1);
            s.push(unit(rank, &[(rank - 1, 1)]));
            (diag_gram(rank, Rat::one()), s)
        }
        Family::C => {
            let mut s = chain(rank, rank - 1);
            s.push(unit(rank, &[(rank - 1, 2)]));
            (diag_gram(rank, Rat::new(1, 2)), s)
        }
        Family::D => {
            let mut s = chain(rank, rank - 1);
            s.push(unit(rank, &[(rank - 2, 1), (rank - 1, 1)]));
            (diag_gram(rank, Rat::one()), s)
        }
        Family::F4 => {
            let s = vec![
                Root(vec![0, 2, -2, 0]),
                Root(vec![0, 0, 2, -2]),
                Root(vec![0, 0, 0, 2]),
                Root(vec![1, -1, -1, -1]),
            ];
            (diag_gram(4, Rat::new(1, 4)), s)
        }
        Family::G2 => {
            let s = vec![Root(vec![1, -1, 0]), Root(vec![-2, 1, 1])];
            (diag_gram(3, Rat::new(1, 3)), s)
        }
        Family::E6 | Family::E7 | Family::E8 => {
            // Bourbaki numbering: 1-3-4-5-6-7-8 is a chain and 2 hangs off 4.
            let edges: &[(usize, usize)] = &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
            let mut g = diag_gram(rank, Rat::from_integer(2));
            for &(a, b) in edges {
                if a <= rank && b <= rank {
                    g[a - 1][b - 1] = -Rat::one();
                    g[b - 1][a - 1] = -Rat::one();
                }
            }
            let s = (0..rank).map(|i| unit(rank, &[(i, 1)])).collect();
            (g, s)
        }
    }
}

fn expected_root_count(family: Family, rank: usize) -> usize {
    let n = rank;
    match family {
        Family::A => n * (n + 1),
        Family::B | Family::C => 2 * n * n,
        Family::D => 2 * n * (n - 1),
        Family::E6 => 72,
        Family::E7 => 126,
        Family::E8 => 240,
        Family::F4 => 48,
        Family::G2 => 12,
    }
}

/// Closes the simple roots under the simple reflections.
fn weyl_closure(gram: &[Vec<Rat>], simple: &[Root]) -> Vec<Root> {
    let mut seen: BTreeSet<Root> = simple.iter().cloned().collect();
    let mut frontier: Vec<Root> = simple.to_vec();
    let lens: Vec<Rat> = simple.iter().map(|s| ip_int(gram, &s.0, &s.0)).collect();
    while let Some(v) = frontier.pop() {
        for (s, l) in simple.iter().zip(&lens) {
            let c = Rat::from_integer(2) * ip_int(gram, &v.0, &s.0) / l;
            if c.is_zero() {
                continue;
            }
            let w = v.add_scaled(-c.to_integer(), s);
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Exact inverse of a square rational matrix by Gauss–Jordan elimination.
pub(crate) fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_has_twelve_long_roots() {
        let rs = RootSystem::build(Family::A, 3).unwrap();
        assert_eq!(rs.roots().len(), 12);
        assert!(rs.roots().iter().all(|r| rs.is_long(r)));
    }

    #[test]
    fn g2_lengths() {
        let rs = RootSystem::build(Family::G2, 2).unwrap();
        let long = rs.roots().iter().filter(|r| rs.is_long(r)).count();
        assert_eq!(long, 6);
        assert!(rs
            .roots()
            .iter()
            .filter(|r| !rs.is_long(r))
            .all(|r| rs.len2(r) == Rat::new(2, 3)));
    }

    #[test]
    fn wrong_rank_is_rejected() {
        assert!(matches!(
            RootSystem::build(Family::E6, 7),
            Err(Error::Unsupported { .. })
        ));
        assert!(RootSystem::build(Family::D, 2).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let rs = RootSystem::build(Family::F4, 4).unwrap();
        let g = rs.simple_gram();
        let inv = invert(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let s: Rat = (0..4).map(|k| g[i][k] * inv[k][j]).fold(Rat::zero(), |a, b| a + b);
                assert_eq!(s, if i == j { Rat::one() } else { Rat::zero() });
            }
        }
    }
}
