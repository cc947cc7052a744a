//! Dense bit-packed vectors and matrices over GF(2).

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the overlap, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, w)| wi * WORD + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                op: "from_rows",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value)
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVec> {
        self.data.iter()
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.data.iter().map(BitVec::weight).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for row in &self.data {
            for c in row.ones() {
                w[c] += 1;
            }
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                op: "mul",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[r].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                op: "mul_vec",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(BitVec::from_indices(
            self.rows,
            (0..self.rows).filter(|&r| self.data[r].dot(v)),
        ))
    }

    pub fn rank(&self) -> usize {
        RowSpace::from_matrix(self).dim()
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (r, &p) in pivots.iter().enumerate() {
                    if rref.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the span of the rows.
    pub fn in_row_space(&self, v: &BitVec) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                op: "in_row_space",
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(RowSpace::from_matrix(self).contains(v))
    }

    /// Reduced row echelon form and pivot columns (one per nonzero row).
    pub fn rref(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.data.swap(r, p);
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.get(i, c) {
                    m.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r);
        m.rows = r;
        (m, pivots)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<BinaryMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in self.data[r].ones() {
                aug.set(r, c, true);
            }
            aug.set(r, n + r, true);
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in rref.data[r].ones().filter(|&c| c >= n) {
                inv.set(r, c - n, true);
            }
        }
        Some(inv)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension {
                op: "vstack",
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis of a subspace of GF(2)^n.
///
/// Every stored vector has a distinct leading bit and no other stored vector
/// has that bit set, so membership is a single reduction pass.
#[derive(Clone, Debug)]
pub struct RowSpace {
    len: usize,
    basis: Vec<(usize, BitVec)>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn from_matrix(m: &BinaryMatrix) -> Self {
        let mut s = Self::new(m.cols());
        for row in m.row_iter() {
            s.insert(row.clone());
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (pivot, b) in &self.basis {
            if r.get(*pivot) {
                r.xor_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let r = self.reduce(&v);
        let Some(pivot) = r.first_one() else {
            return false;
        };
        for (_, b) in self.basis.iter_mut() {
            if b.get(pivot) {
                b.xor_assign(&r);
            }
        }
        self.basis.push((pivot, r));
        true
    }
}
