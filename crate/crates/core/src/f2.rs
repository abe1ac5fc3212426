//! Dense bit-packed linear algebra over F2.
//!
//! Rows are packed 64 bits to a word. The convention throughout the crate is
//! row-major action: a matrix M sends the source coordinate row-vector v to
//! v·M, so composing "apply f, then g" is the product M_f · M_g. Pivoting is
//! always on the lowest column index so every elimination is deterministic.

use alloc::vec;
use alloc::vec::Vec;

/// A bit-packed row vector of fixed length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_in(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_set(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// A dense F2 matrix; rows index the source basis, columns the target basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    w: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let w = cols.div_ceil(64);
        BitMatrix { rows, cols, w, data: vec![0; rows * w] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[BitVec], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            m.row_mut(i).copy_from_slice(&r.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.w..(i + 1) * self.w]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.w..(i + 1) * self.w]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.row(i)[j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.w;
        if b {
            self.data[i * w + j / 64] |= 1 << (j % 64);
        } else {
            self.data[i * w + j / 64] &= !(1 << (j % 64));
        }
    }

    pub fn row_vec(&self, i: usize) -> BitVec {
        BitVec { len: self.cols, words: self.row(i).to_vec() }
    }

    pub fn set_row(&mut self, i: usize, v: &BitVec) {
        debug_assert_eq!(v.len, self.cols);
        self.row_mut(i).copy_from_slice(&v.words);
    }

    pub fn xor_row_from(&mut self, dst: usize, src_row: &[u64]) {
        let w = self.w;
        for k in 0..w {
            self.data[dst * w + k] ^= src_row[k];
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// v · M for a source-side row vector v.
    pub fn apply(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(v.len, self.rows);
        let mut out = BitVec::zeros(self.cols);
        for i in v.iter_ones() {
            let row = self.row(i);
            for (a, b) in out.words.iter_mut().zip(row.iter()) {
                *a ^= *b;
            }
        }
        out
    }

    /// Matrix product; `self` then `other` in the row-action convention.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for (k, &word) in row.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = k * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    let src = other.row(j);
                    let w = out.w;
                    let dst = &mut out.data[i * w..(i + 1) * w];
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        *d ^= *s;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a ^= *b;
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            for (k, &word) in row.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = k * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Stack `self` on top of `other` (same column count).
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        debug_assert_eq!(self.cols, other.cols);
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    pub fn rank(&self) -> usize {
        Eliminator::new(self.cols).insert_all(self).basis_len()
    }

    /// Rows spanning { v : v · self = 0 }, in a canonical order.
    pub fn left_kernel(&self) -> BitMatrix {
        let mut elim = Eliminator::new(self.cols);
        let mut kernel: Vec<BitVec> = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row_vec(i);
            let mut tag = BitVec::unit(self.rows, i);
            elim.reduce_tracked(&mut v, &mut tag);
            if v.is_zero() {
                kernel.push(tag);
            } else {
                elim.insert_tracked(v, tag);
            }
        }
        BitMatrix::from_rows(&kernel, self.rows)
    }
}

/// Incremental Gaussian eliminator over rows of a fixed length.
///
/// Rows are kept in echelon form with unique pivots (lowest set bit); an
/// optional tag vector per row tracks how each stored row was formed, which is
/// what `left_kernel` and `express` build on.
pub struct Eliminator {
    len: usize,
    rows: Vec<BitVec>,
    tags: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Eliminator {
    pub fn new(len: usize) -> Self {
        Eliminator { len, rows: Vec::new(), tags: Vec::new(), pivots: Vec::new() }
    }

    pub fn basis_len(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn insert_all(mut self, m: &BitMatrix) -> Self {
        for i in 0..m.rows {
            self.insert(m.row_vec(i));
        }
        self
    }

    /// Reduce `v` against the stored rows in place; returns true if reduced to zero.
    pub fn reduce(&self, v: &mut BitVec) -> bool {
        debug_assert_eq!(v.len, self.len);
        for (r, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if v.get(p) {
                v.xor_in(r);
            }
        }
        v.is_zero()
    }

    fn reduce_tracked(&self, v: &mut BitVec, tag: &mut BitVec) {
        for ((r, t), &p) in self.rows.iter().zip(self.tags.iter()).zip(self.pivots.iter()) {
            if v.get(p) {
                v.xor_in(r);
                if !t.is_empty() {
                    tag.xor_in(t);
                }
            }
        }
    }

    /// Insert a row; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        if self.reduce(&mut v) {
            return false;
        }
        let tag = BitVec::zeros(0);
        self.push_row(v, tag);
        true
    }

    fn insert_tracked(&mut self, v: BitVec, tag: BitVec) {
        debug_assert!(!v.is_zero());
        self.push_row(v, tag);
    }

    fn push_row(&mut self, v: BitVec, tag: BitVec) {
        let p = v.first_set().expect("nonzero row");
        // Keep earlier rows fully reduced at this pivot.
        for i in 0..self.rows.len() {
            if self.rows[i].get(p) {
                self.rows[i].xor_in(&v);
                if !self.tags[i].is_empty() && !tag.is_empty() {
                    let t = tag.clone();
                    self.tags[i].xor_in(&t);
                }
            }
        }
        self.rows.push(v);
        self.tags.push(tag);
        self.pivots.push(p);
    }
}

/// Express each row of `targets` in terms of the rows of `basis`.
///
/// Returns `None` if some target row is outside the row span. The coefficient
/// matrix C satisfies C · basis = targets.
pub fn express(basis: &BitMatrix, targets: &BitMatrix) -> Option<BitMatrix> {
    debug_assert_eq!(basis.cols, targets.cols);
    let mut elim = Eliminator::new(basis.cols);
    for i in 0..basis.rows {
        let mut v = basis.row_vec(i);
        let mut tag = BitVec::unit(basis.rows, i);
        elim.reduce_tracked(&mut v, &mut tag);
        if !v.is_zero() {
            elim.insert_tracked(v, tag);
        }
        // Dependent basis rows are fine: membership is all that matters.
    }
    let mut out = BitMatrix::zeros(targets.rows, basis.rows);
    for i in 0..targets.rows {
        let mut v = targets.row_vec(i);
        let mut tag = BitVec::zeros(basis.rows);
        elim.reduce_tracked(&mut v, &mut tag);
        if !v.is_zero() {
            return None;
        }
        out.set_row(i, &tag);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(max: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::bool::ANY, r * c)
                .prop_map(move |bits| {
                    let mut m = BitMatrix::zeros(r, c);
                    for (k, b) in bits.into_iter().enumerate() {
                        m.set(k / c, k % c, b);
                    }
                    m
                })
        })
    }

    #[test]
    fn identity_apply() {
        let id = BitMatrix::identity(5);
        let v = BitVec::unit(5, 3);
        assert_eq!(id.apply(&v), v);
        assert_eq!(id.rank(), 5);
    }

    #[test]
    fn kernel_of_projection() {
        // Rows 0 and 1 both map to e0: kernel is spanned by their sum.
        let mut m = BitMatrix::zeros(2, 1);
        m.set(0, 0, true);
        m.set(1, 0, true);
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.get(0, 0) && k.get(0, 1));
    }

    #[test]
    fn express_roundtrip() {
        let mut basis = BitMatrix::zeros(2, 3);
        basis.set(0, 0, true);
        basis.set(0, 1, true);
        basis.set(1, 2, true);
        let mut t = BitMatrix::zeros(1, 3);
        t.set(0, 0, true);
        t.set(0, 1, true);
        t.set(0, 2, true);
        let c = express(&basis, &t).unwrap();
        assert!(c.get(0, 0) && c.get(0, 1));
        let mut outside = BitMatrix::zeros(1, 3);
        outside.set(0, 0, true);
        assert!(express(&basis, &outside).is_none());
    }

    proptest! {
        #[test]
        fn transpose_preserves_rank(m in arb_matrix(9)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_annihilates(m in arb_matrix(9)) {
            let k = m.left_kernel();
            prop_assert!(k.mul(&m).is_zero());
            prop_assert_eq!(k.rows() + m.rank(), m.rows());
        }

        #[test]
        fn product_transpose(a in arb_matrix(7), b in arb_matrix(7)) {
            if a.cols() == b.rows() {
                let ab_t = a.mul(&b).transpose();
                let bt_at = b.transpose().mul(&a.transpose());
                prop_assert_eq!(ab_t, bt_at);
            }
        }
    }
}
