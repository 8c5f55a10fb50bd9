//! Dense bit-packed matrices over GF(2).
//!
//! Rows are stored as runs of `u64` words, column `j` living at bit `j % 64`
//! of word `j / 64`. Padding bits past `cols` are always zero.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from single-word rows. Requires `cols <= 64`; bits at
    /// or above `cols` are masked off.
    pub fn from_row_words(cols: usize, rows: &[u64]) -> Result<Self> {
        if cols > WORD {
            return Err(Error::Dimension(format!(
                "from_row_words supports at most 64 columns, got {cols}"
            )));
        }
        let mask = low_mask(cols);
        let mut m = BitMatrix::zeros(rows.len(), cols);
        if m.stride == 1 {
            for (dst, src) in m.data.iter_mut().zip(rows) {
                *dst = src & mask;
            }
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings, column 0 first.
    pub fn from_bit_rows(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} columns, expected {cols}",
                    row.len()
                )));
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => return Err(Error::Parse(format!("invalid bit character {other:?}"))),
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        let word = &mut self.data[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *word |= bit;
        } else {
            *word &= !bit;
        }
    }

    /// The packed words of row `i`.
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Row rank over GF(2). The matrix itself is left untouched.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.stride == 1 {
            return rank_of_words(&self.data);
        }
        let mut work = self.data.clone();
        rank_multiword(&mut work, self.rows, self.stride, self.cols)
    }

    /// Stacks matrices vertically, preserving row order.
    pub fn vstack(parts: &[BitMatrix]) -> Result<BitMatrix> {
        let Some(first) = parts.first() else {
            return Ok(BitMatrix::zeros(0, 0));
        };
        let cols = first.cols;
        if let Some(bad) = parts.iter().find(|p| p.cols != cols) {
            return Err(Error::Dimension(format!(
                "vstack column mismatch: {} vs {}",
                cols, bad.cols
            )));
        }
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * first.stride);
        for p in parts {
            data.extend_from_slice(&p.data);
        }
        Ok(BitMatrix {
            rows,
            cols,
            stride: first.stride,
            data,
        })
    }

    /// The first `r` rows.
    pub fn leading_rows(&self, r: usize) -> Result<BitMatrix> {
        if r > self.rows {
            return Err(Error::Dimension(format!(
                "leading_rows({r}) on a matrix with {} rows",
                self.rows
            )));
        }
        Ok(BitMatrix {
            rows: r,
            cols: self.cols,
            stride: self.stride,
            data: self.data[..r * self.stride].to_vec(),
        })
    }

    /// The first `c` columns.
    pub fn leading_cols(&self, c: usize) -> Result<BitMatrix> {
        if c > self.cols {
            return Err(Error::Dimension(format!(
                "leading_cols({c}) on a matrix with {} columns",
                self.cols
            )));
        }
        let mut out = BitMatrix::zeros(self.rows, c);
        for i in 0..self.rows {
            let src = self.row_words(i);
            let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
            dst.copy_from_slice(&src[..out.stride]);
            if let Some(last) = dst.last_mut() {
                if c % WORD != 0 {
                    *last &= low_mask(c % WORD);
                }
            }
        }
        Ok(out)
    }

    /// `zᵀ M y` over GF(2), with `z` indexing rows and `y` indexing columns.
    pub fn bilinear(&self, z: &[bool], y: &[bool]) -> Result<bool> {
        if z.len() != self.rows || y.len() != self.cols {
            return Err(Error::Dimension(format!(
                "bilinear form on {}x{} matrix with |z|={} |y|={}",
                self.rows,
                self.cols,
                z.len(),
                y.len()
            )));
        }
        let y_words = pack_bits(y);
        let mut acc = 0u32;
        for (i, _) in z.iter().enumerate().filter(|(_, &zi)| zi) {
            acc ^= self
                .row_words(i)
                .iter()
                .zip(&y_words)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1;
        }
        Ok(acc & 1 == 1)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn low_mask(bits: usize) -> u64 {
    if bits >= WORD {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

pub(crate) fn pack_bits(bits: &[bool]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(WORD)];
    for (j, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
        words[j / WORD] |= 1 << (j % WORD);
    }
    words
}

/// Rank of a set of single-word rows.
///
/// Keeps a basis sorted by leading bit; `min(x, x ^ b)` clears the leading
/// bit of `b` from `x` exactly when `x` has it set.
#[inline]
pub fn rank_of_words(rows: &[u64]) -> usize {
    let mut basis = [0u64; WORD];
    let mut rank = 0;
    for &row in rows {
        let mut x = row;
        for &b in &basis[..rank] {
            x = x.min(x ^ b);
        }
        if x != 0 {
            // insertion keeps the basis ordered by decreasing value, which
            // is ordered by decreasing leading bit for a reduced basis
            let mut pos = rank;
            while pos > 0 && basis[pos - 1] < x {
                basis[pos] = basis[pos - 1];
                pos -= 1;
            }
            basis[pos] = x;
            rank += 1;
            if rank == WORD {
                break;
            }
        }
    }
    rank
}

fn rank_multiword(data: &mut [u64], rows: usize, stride: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (w, bit) = (col / WORD, 1u64 << (col % WORD));
        let Some(pivot) = (rank..rows).find(|&r| data[r * stride + w] & bit != 0) else {
            continue;
        };
        if pivot != rank {
            for k in 0..stride {
                data.swap(pivot * stride + k, rank * stride + k);
            }
        }
        for r in rank + 1..rows {
            if data[r * stride + w] & bit != 0 {
                for k in w..stride {
                    let v = data[rank * stride + k];
                    data[r * stride + k] ^= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small_examples() {
        assert_eq!(BitMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        let m = BitMatrix::from_bit_rows(&["101", "011"]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn empty_matrices_have_rank_zero() {
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(4, 0).rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn vstack_examples() {
        let z = BitMatrix::zeros(1, 3);
        let s = BitMatrix::vstack(&[z.clone(), z]).unwrap();
        assert_eq!((s.rows(), s.cols(), s.rank()), (2, 3, 0));

        let i2 = BitMatrix::identity(2);
        let s = BitMatrix::vstack(&[i2.clone(), i2]).unwrap();
        assert_eq!((s.rows(), s.rank()), (4, 2));

        let a = BitMatrix::from_bit_rows(&["100"]).unwrap();
        let b = BitMatrix::from_bit_rows(&["010"]).unwrap();
        assert_eq!(BitMatrix::vstack(&[a, b]).unwrap().rank(), 2);
    }

    #[test]
    fn vstack_rejects_mismatched_columns() {
        let err = BitMatrix::vstack(&[BitMatrix::zeros(1, 3), BitMatrix::zeros(1, 4)]);
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn leading_rows_examples() {
        let m = BitMatrix::identity(3);
        let top = m.leading_rows(0).unwrap();
        assert_eq!((top.rows(), top.cols(), top.rank()), (0, 3, 0));
        let top = m.leading_rows(2).unwrap();
        assert_eq!((top.rows(), top.rank()), (2, 2));
        assert!(matches!(m.leading_rows(4), Err(Error::Dimension(_))));
    }

    #[test]
    fn leading_cols_masks_padding() {
        let m = BitMatrix::from_bit_rows(&["111", "011"]).unwrap();
        let l = m.leading_cols(1).unwrap();
        assert_eq!(l.row_words(0), &[1]);
        assert_eq!(l.row_words(1), &[0]);
        assert_eq!(l.rank(), 1);
    }

    #[test]
    fn bilinear_examples() {
        let m = BitMatrix::from_bit_rows(&["101", "011"]).unwrap();
        assert!(!m.bilinear(&[false, false], &[true, true, true]).unwrap());
        // (1+0+1) + (0+1+1) = 4, even
        assert!(!m.bilinear(&[true, true], &[true, true, true]).unwrap());
        assert!(m.bilinear(&[true, false], &[true, false, false]).unwrap());
        let i2 = BitMatrix::identity(2);
        assert!(i2.bilinear(&[true, false], &[true, false]).unwrap());
        assert!(matches!(m.bilinear(&[true], &[true, true, true]), Err(Error::Dimension(_))));
    }

    #[test]
    fn multiword_rank_matches_block_structure() {
        // identity of size 130 spans three words per row
        let m = BitMatrix::identity(130);
        assert_eq!(m.rank(), 130);
        let mut dup = BitMatrix::vstack(&[m.clone(), m]).unwrap();
        assert_eq!(dup.rank(), 130);
        dup.set(0, 129, true);
        assert_eq!(dup.rank(), 130);
    }

    #[test]
    fn from_row_words_masks_high_bits() {
        let m = BitMatrix::from_row_words(2, &[0b111, 0b10]).unwrap();
        assert_eq!(m.row_words(0), &[0b11]);
        assert_eq!(m.rank(), 2);
        assert!(BitMatrix::from_row_words(65, &[1]).is_err());
    }
}
