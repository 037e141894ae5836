//! Dense GF(2) matrices with rows packed into 64-bit words.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.words + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (dst, src) = (r * out.words, k * other.words);
                    for w in 0..out.words {
                        out.data[dst + w] ^= other.data[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Rank by forward elimination: each row is reduced against the pivot
    /// rows found so far, keyed by their lowest set column.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.words, (0..self.rows).map(|r| self.row(r).to_vec()))
    }

    /// Rank of the submatrix on the selected rows and columns.
    pub fn sub_rank(&self, rows: &[usize], cols: &[usize]) -> usize {
        let words = cols.len().div_ceil(64).max(1);
        let packed = rows.iter().map(|&r| {
            let mut v = vec![0u64; words];
            for (i, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    v[i / 64] |= 1 << (i % 64);
                }
            }
            v
        });
        rank_of_rows(words, packed)
    }
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn rank_of_rows(words: usize, rows: impl Iterator<Item = Vec<u64>>) -> usize {
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; words * 64];
    let mut rank = 0;
    for mut row in rows {
        while let Some(c) = lowest_bit(&row) {
            match &pivots[c] {
                Some(p) => {
                    for (a, b) in row.iter_mut().zip(p) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots[c] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[u8]]) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                m.set(r, c, x == 1);
            }
        }
        m
    }

    #[test]
    fn small_ranks() {
        assert_eq!(from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).rank(), 2);
        assert_eq!(from_rows(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(BitMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn wide_matrix_crosses_word_boundary() {
        let mut m = BitMatrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(1, 129, true);
        m.set(2, 64, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
        assert_eq!(m.sub_rank(&[0, 2], &[64, 129]), 2);
        assert_eq!(m.sub_rank(&[0, 1, 2], &[129]), 1);
    }

    #[test]
    fn product() {
        let a = from_rows(&[&[1, 1], &[0, 1]]);
        let p = a.mul(&a);
        assert_eq!(p, from_rows(&[&[1, 0], &[0, 1]]));
    }
}
