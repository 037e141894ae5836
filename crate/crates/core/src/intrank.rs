//! Exact rank over the rationals of sparse integer matrices.
//!
//! Rows are eliminated fraction-free: reducing row `r` against pivot row `p`
//! on their common leading column computes `(b/g) r - (a/g) p` with
//! `g = gcd(a, b)`, then divides out the content of the result. Arithmetic is
//! checked `i64` first; if any step overflows the whole computation is redone
//! with arbitrary-precision integers.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sparse row: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseRow = Vec<(usize, i64)>;

trait Coeff: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `x * a - y * b`, `None` on overflow.
    fn comb(x: &Self, a: &Self, y: &Self, b: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn comb(x: &Self, a: &Self, y: &Self, b: &Self) -> Option<Self> {
        x.checked_mul(*a)?.checked_sub(y.checked_mul(*b)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn comb(x: &Self, a: &Self, y: &Self, b: &Self) -> Option<Self> {
        Some(x * a - y * b)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

fn combine<T: Coeff>(row: &[(usize, T)], a: &T, pivot: &[(usize, T)], b: &T) -> Option<Vec<(usize, T)>> {
    // row * a - pivot * b
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, v) = if take_row {
            let (c, x) = &row[i];
            i += 1;
            (*c, T::comb(x, a, &zero, &zero)?)
        } else if take_piv {
            let (c, y) = &pivot[j];
            j += 1;
            (*c, T::comb(&zero, &zero, y, b)?)
        } else {
            let (c, x) = &row[i];
            let (_, y) = &pivot[j];
            i += 1;
            j += 1;
            (*c, T::comb(x, a, y, b)?)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    Some(out)
}

fn normalize<T: Coeff>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

fn rank_with<T: Coeff>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for raw in rows {
        let mut row: Vec<(usize, T)> = raw.iter().map(|&(c, v)| (c, T::from_i64(v))).collect();
        normalize(&mut row);
        while let Some((col, lead)) = row.first().cloned() {
            let Some(p) = pivots.get(&col) else {
                pivots.insert(col, row);
                break;
            };
            let plead = &p[0].1;
            let g = lead.gcd(plead);
            let a = plead.div_exact(&g);
            let b = lead.div_exact(&g);
            row = combine(&row, &a, p, &b)?;
            normalize(&mut row);
        }
    }
    Some(pivots.len())
}

/// Rank over Q of the matrix with the given sparse rows.
pub fn rank(rows: &[SparseRow]) -> usize {
    rank_with::<i64>(rows).unwrap_or_else(|| rank_with::<BigInt>(rows).expect("bigint never overflows"))
}

/// Rank computed with arbitrary-precision arithmetic only.
pub fn rank_bigint(rows: &[SparseRow]) -> usize {
    rank_with::<BigInt>(rows).expect("bigint never overflows")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<SparseRow> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
            .collect()
    }

    #[test]
    fn rank_differs_from_gf2() {
        // rank 3 over Q, rank 2 over GF(2)
        let m = dense(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(rank(&m), 3);
        let m = dense(&[&[2, 0], &[0, 2]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn dependent_rows() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, -1], &[3, 2, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank_bigint(&m), 2);
    }

    #[test]
    fn overflow_falls_back() {
        let big = 1i64 << 40;
        let m = dense(&[&[big, big - 1, 0], &[big - 3, big, 1], &[big - 5, big - 7, big]]);
        assert_eq!(rank(&m), rank_bigint(&m));
        assert_eq!(rank(&m), 3);
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![]]), 0);
    }
}
