//! Exact linear algebra over `Q` for the small matrices built by the
//! representation constructors.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::glpoly::Q;

/// A dense rational matrix stored row-major.
pub(crate) type QMat = Vec<Vec<Q>>;

/// Reduced row-echelon form of the given rows; returns the nonzero rows and
/// their pivot columns.
pub(crate) fn rref(rows: &[Vec<Q>], cols: usize) -> (QMat, Vec<usize>) {
    let mut m: QMat = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v *= inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = f.clone() * m[r][j].clone();
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Basis of the null space `{v : A v = 0}` of a `rows × cols` matrix.
pub(crate) fn nullspace(a: &[Vec<Q>], cols: usize) -> QMat {
    let (r, pivots) = rref(a, cols);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Reduces `v` modulo the row space of an RREF basis with the given pivots.
pub(crate) fn reduce(v: &mut [Q], basis: &[Vec<Q>], pivots: &[usize]) {
    for (row, &p) in basis.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let f = v[p].clone();
        for (x, y) in v.iter_mut().zip(row) {
            *x -= f.clone() * y.clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = alloc::vec![alloc::vec![q(1), q(2), q(3)], alloc::vec![q(2), q(4), q(6)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Q = a[0].iter().zip(v).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn reduce_kills_row_space() {
        let (b, p) = rref(&[alloc::vec![q(1), q(1), q(0)]], 3);
        let mut v = alloc::vec![q(3), q(3), q(0)];
        reduce(&mut v, &b, &p);
        assert!(v.iter().all(Zero::is_zero));
    }
}
