//! Dense GF(2) vectors packed into machine words, and Gaussian elimination
//! over them.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVec({s})")
    }
}

/// A fully reduced row-echelon basis of a GF(2) subspace.
///
/// Every row has a pivot (its lowest set bit) that is clear in all other
/// rows; rows are kept sorted by pivot, so the basis of a given subspace is
/// unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(len: usize, vectors: impl IntoIterator<Item = BitVec>) -> Self {
        let mut basis = Self::new(len);
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The unique representative of `v + span` vanishing on every pivot.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false when it was already there.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch");
        let r = self.reduce(&v);
        let Some(p) = r.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    /// Coordinates of a vector of the span in terms of `rows()`, or `None`
    /// when it lies outside.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        if !self.contains(v) {
            return None;
        }
        Some(BitVec::from_indices(
            self.dim(),
            self.pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| v.get(p))
                .map(|(i, _)| i),
        ))
    }
}

/// A GF(2) matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Gf2Matrix { ncols, rows }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Gf2Matrix::new(ncols, vec![BitVec::zeros(ncols); nrows])
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        BitVec::from_indices(
            self.nrows(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, row)| row.dot(v))
                .map(|(i, _)| i),
        )
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.ncols, rhs.nrows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = BitVec::zeros(rhs.ncols);
                for j in row.iter_ones() {
                    out.xor_assign(&rhs.rows[j]);
                }
                out
            })
            .collect();
        Gf2Matrix::new(rhs.ncols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn row_space(&self) -> EchelonBasis {
        EchelonBasis::spanned_by(self.ncols, self.rows.iter().cloned())
    }

    pub fn rank(&self) -> usize {
        self.row_space().dim()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column of the reduced
    /// row-echelon form.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let rs = self.row_space();
        (0..self.ncols)
            .filter(|c| !rs.pivots().contains(c))
            .map(|free| {
                let mut v = BitVec::zeros(self.ncols);
                v.set(free, true);
                for (row, &p) in rs.rows().iter().zip(rs.pivots()) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}
