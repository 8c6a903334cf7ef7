//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words and eliminated with word-wide XOR.
//! Pivoting is deterministic: columns are scanned left to right and the
//! topmost available row becomes the pivot, so kernel bases and particular
//! solutions are reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// The zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Builds a vector from bits; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b != 0);
        }
        v
    }

    /// The `i`-th unit vector.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True for the empty vector.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Entry `i`, or `None` when out of range.
    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1)
    }

    /// Entry `i`.
    ///
    /// # Panics
    /// If `i >= len`.
    pub fn bit(&self, i: usize) -> bool {
        self.get(i).expect("BitVector index out of range")
    }

    /// Sets entry `i`.
    ///
    /// # Panics
    /// If `i >= len`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "BitVector index out of range");
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// True if every entry is 0.
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of 1 entries.
    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// `self += other`.
    pub fn xor_assign(&mut self, other: &BitVector) -> Result<()> {
        check_len(self.len, other.len)?;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// `self + other`.
    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    /// Inner product.
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        check_len(self.len, other.len)?;
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        Ok(ones % 2 == 1)
    }

    /// Iterator over the entries.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(|i| self.bit(i))
    }

    /// Entries as 0/1 bytes.
    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// A dense `rows x cols` matrix over GF(2), row-major and bit-packed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = word_count(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. Every row must have the same
    /// length; an empty slice gives a `0 x 0` matrix.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            check_len(cols, r.len())?;
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b != 0);
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len(rows, c.len())?;
            for i in 0..rows {
                m.set(i, j, c.bit(i));
            }
        }
        Ok(m)
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`, or `None` when out of range.
    pub fn get(&self, i: usize, j: usize) -> Option<bool> {
        (i < self.rows && j < self.cols)
            .then(|| self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS) & 1 == 1)
    }

    /// Entry `(i, j)`.
    ///
    /// # Panics
    /// If the index is out of range.
    pub fn bit(&self, i: usize, j: usize) -> bool {
        self.get(i, j).expect("BitMatrix index out of range")
    }

    /// Sets entry `(i, j)`.
    ///
    /// # Panics
    /// If the index is out of range.
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.rows && j < self.cols,
            "BitMatrix index out of range"
        );
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// Flips entry `(i, j)`.
    pub fn toggle(&mut self, i: usize, j: usize) {
        let v = self.bit(i, j);
        self.set(i, j, !v);
    }

    fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> BitVector {
        BitVector {
            len: self.cols,
            words: self.row_words(i).to_vec(),
        }
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            v.set(i, self.bit(i, j));
        }
        v
    }

    /// Entries as nested 0/1 rows.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_bits()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.bit(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    /// `self + other`.
    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitMatrix {
            data,
            ..self.clone()
        })
    }

    /// `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.rows)?;
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.bit(i, k) {
                    let src = other.row_words(k).to_vec();
                    let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.cols, v.len)?;
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            let ones: u32 = self
                .row_words(i)
                .iter()
                .zip(&v.words)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            out.set(i, ones % 2 == 1);
        }
        Ok(out)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.rows, other.rows)?;
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.bit(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.bit(i, j));
            }
        }
        Ok(out)
    }

    /// The block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &BitMatrix, b: &BitMatrix, c: &BitMatrix, d: &BitMatrix) -> Result<BitMatrix> {
        let top = a.hstack(b)?;
        let bottom = c.hstack(d)?;
        check_len(top.cols, bottom.cols)?;
        let mut out = BitMatrix::zeros(top.rows + bottom.rows, top.cols);
        out.data[..top.data.len()].copy_from_slice(&top.data);
        out.data[top.data.len()..].copy_from_slice(&bottom.data);
        Ok(out)
    }

    /// Columns `from..to` as a new matrix.
    pub fn columns(&self, from: usize, to: usize) -> BitMatrix {
        assert!(from <= to && to <= self.cols, "column range out of bounds");
        let mut out = BitMatrix::zeros(self.rows, to - from);
        for i in 0..self.rows {
            for j in from..to {
                out.set(i, j - from, self.bit(i, j));
            }
        }
        out
    }

    /// True for a square matrix equal to its transpose.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.bit(i, j) == self.bit(j, i)))
    }

    /// True if every diagonal entry is 0.
    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.rows.min(self.cols)).all(|i| !self.bit(i, i))
    }

    /// True if all entries are 0.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    fn xor_rows(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.data.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    /// Reduced row echelon form in place, pivoting only in columns `< limit`.
    /// Returns the pivot columns; pivot `r` sits in row `r`.
    fn rref(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.bit(i, j)) else {
                continue;
            };
            self.swap_rows(p, r);
            for i in 0..self.rows {
                if i != r && self.bit(i, j) {
                    self.xor_rows(r, i);
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        self.clone().rref(self.cols).len()
    }

    /// A basis of the right kernel `{x : self * x = 0}`, one vector per free
    /// column in increasing column order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let mut m = self.clone();
        let pivots = m.rref(self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for (r, &p) in pivots.iter().enumerate() {
                    if m.bit(r, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// A solution of `self * x = b`, with every free variable set to 0, or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>> {
        check_len(self.rows, b.len)?;
        let mut aug = self.hstack(&BitMatrix::from_columns(
            self.rows,
            core::slice::from_ref(b),
        )?)?;
        let pivots = aug.rref(self.cols);
        if (pivots.len()..self.rows).any(|i| aug.bit(i, self.cols)) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x.set(p, aug.bit(r, self.cols));
        }
        Ok(Some(x))
    }

    /// True if `c` lies in the column space.
    pub fn in_image(&self, c: &BitVector) -> Result<bool> {
        Ok(self.solve(c)?.is_some())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark_matrix() -> BitMatrix {
        BitMatrix::from_rows(&[[0u8, 0, 1], [0, 0, 0]]).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::zeros(2, 2).rank(), 0);
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(remark_matrix().rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::zeros(2, 2).kernel_basis().len(), 2);
        assert!(BitMatrix::identity(2).kernel_basis().is_empty());
        let k = remark_matrix().kernel_basis();
        assert_eq!(
            k,
            [
                BitVector::from_bits(&[1, 0, 0]),
                BitVector::from_bits(&[0, 1, 0])
            ]
        );
    }

    #[test]
    fn solve_examples() {
        let a = BitMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap();
        let b = BitVector::from_bits(&[1, 1]);
        assert_eq!(a.solve(&b).unwrap(), Some(BitVector::from_bits(&[1, 0])));
        assert_eq!(
            a.solve(&BitVector::zeros(2)).unwrap(),
            Some(BitVector::zeros(2))
        );
        let id = BitMatrix::identity(2);
        assert_eq!(
            id.solve(&BitVector::from_bits(&[1, 0])).unwrap(),
            Some(BitVector::from_bits(&[1, 0]))
        );
        assert!(a.solve(&BitVector::from_bits(&[1, 0])).unwrap().is_none());
        assert!(matches!(
            a.solve(&BitVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn in_image_examples() {
        let m = remark_matrix();
        assert!(m.in_image(&BitVector::from_bits(&[0, 0])).unwrap());
        assert!(m.in_image(&BitVector::from_bits(&[1, 0])).unwrap());
        assert!(!m.in_image(&BitVector::from_bits(&[0, 1])).unwrap());
    }

    #[test]
    fn out_of_range_access() {
        let m = BitMatrix::zeros(2, 3);
        assert_eq!(m.get(2, 0), None);
        assert_eq!(m.get(0, 3), None);
        assert_eq!(m.get(1, 2), Some(false));
        assert_eq!(BitVector::zeros(3).get(3), None);
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = BitMatrix::zeros(3, 130);
        m.set(0, 0, true);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(2, 129, true);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.kernel_basis().len(), 127);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).unwrap().is_zero());
        }
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn block_and_symmetry() {
        let a = BitMatrix::identity(2);
        let z = BitMatrix::zeros(2, 2);
        let b = BitMatrix::block(&z, &a, &a, &z).unwrap();
        assert!(b.is_symmetric());
        assert!(b.has_zero_diagonal());
        assert_eq!(b.rank(), 4);
        assert_eq!(b.columns(2, 4).to_rows(), [[1, 0], [0, 1], [0, 0], [0, 0]]);
    }
}
