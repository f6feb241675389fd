//! Bit-packed linear algebra over GF(2).
//!
//! Rows are packed into `u64` words and eliminated with XOR. Every
//! degreewise statement about subspaces of a graded piece (kernels, images,
//! ideal slices, intersections) goes through this module. It never looks at
//! what the coordinates mean; callers own the ambient basis.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[inline]
fn mask_above(bit: u32) -> u64 {
    if bit >= 63 {
        0
    } else {
        !0u64 << (bit + 1)
    }
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVec::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
        )
    }

    /// Parses a string of `0`/`1` characters; other characters are ignored.
    pub fn from_bit_str(s: &str) -> Self {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| *c == '0' || *c == '1')
            .map(|c| c == '1')
            .collect();
        BitVec::from_bools(&bits)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= m;
        } else {
            self.words[i / WORD] &= !m;
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
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * WORD + b)
                }
            })
        })
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        BitVec::from_indices(
            self.len + other.len,
            self.ones().chain(other.ones().map(|i| i + self.len)),
        )
    }

    /// The sub-vector of positions `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        BitVec::from_indices(
            len,
            self.ones()
                .filter(|&i| i >= start && i < start + len)
                .map(|i| i - start),
        )
    }

    fn words(&self) -> &[u64] {
        &self.words
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

/// A dense GF(2) matrix with word-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
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

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            m.data[i * m.stride..(i + 1) * m.stride].copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix from `0`/`1` row strings of equal length.
    pub fn from_bit_strs(rows: &[&str]) -> Result<Self> {
        let vecs: Vec<BitVec> = rows.iter().map(|s| BitVec::from_bit_str(s)).collect();
        let cols = vecs.first().map_or(0, BitVec::len);
        BitMatrix::from_rows(cols, &vecs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let m = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.stride, source * self.stride);
        for k in 0..self.stride {
            let v = self.data[s + k];
            self.data[t + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `M · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(BitVec::from_indices(
            self.rows,
            (0..self.rows).filter(|&r| {
                self.row_words(r)
                    .iter()
                    .zip(v.words())
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    % 2
                    == 1
            }),
        ))
    }

    /// Reduced row-echelon form and rank. Zero rows end up at the bottom.
    pub fn rref(&self) -> (BitMatrix, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Returns the pivot columns in row order.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let (w, b) = (c / WORD, c % WORD);
            let Some(p) = (next..self.rows).find(|&r| self.data[r * self.stride + w] >> b & 1 == 1)
            else {
                continue;
            };
            self.swap_rows(next, p);
            for r in 0..self.rows {
                if r != next && self.data[r * self.stride + w] >> b & 1 == 1 {
                    self.xor_rows(r, next);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }

    /// Rows form a basis of `{v : M·v = 0}`.
    pub fn kernel(&self) -> BitMatrix {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = BitMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, f) {
                    k.set(i, p, true);
                }
            }
        }
        k
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let s: String = (0..self.cols)
                .map(|c| if self.get(r, c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

/// Incremental echelon accumulator. Each stored row's pivot is its lowest set
/// bit and no two rows share a pivot, so a single ascending sweep reduces any
/// vector to its canonical representative modulo the span.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<BitVec>,
    row_of_pivot: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(cols: usize) -> Self {
        EchelonBasis {
            cols,
            rows: Vec::new(),
            row_of_pivot: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place; the result has zeros in every pivot column.
    pub fn reduce(&self, v: &mut BitVec) {
        self.reduce_tracked(v, |_| {});
    }

    fn reduce_tracked(&self, v: &mut BitVec, mut on_xor: impl FnMut(usize)) {
        debug_assert_eq!(v.len(), self.cols);
        for w in 0..v.words.len() {
            let mut bits = v.words[w];
            while bits != 0 {
                let b = bits.trailing_zeros();
                let col = w * WORD + b as usize;
                if let Some(r) = self.row_of_pivot[col] {
                    v.xor_assign(&self.rows[r]);
                    on_xor(r);
                }
                bits = v.words[w] & mask_above(b);
            }
        }
    }

    /// Adds `v` to the span. Returns `true` if it was independent.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        match v.first_one() {
            None => false,
            Some(p) => {
                self.row_of_pivot[p] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        self.reduce(&mut v);
        v.is_zero()
    }

    /// Pivot columns, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.row_of_pivot[c].is_some())
            .collect()
    }

    /// The reduced row-echelon basis of the span, rows sorted by pivot.
    pub fn to_rref(&self) -> BitMatrix {
        let mut rows: Vec<BitVec> = self.rows.clone();
        rows.sort_by_key(|r| r.first_one());
        let mut m = BitMatrix::from_rows(self.cols, &rows).expect("row lengths agree");
        m.rref_in_place();
        m
    }
}

/// Expresses vectors as combinations of a fixed list of input vectors.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: EchelonBasis,
    inputs: usize,
    combos: Vec<BitVec>,
}

impl SpanSolver {
    pub fn new(cols: usize, inputs: &[BitVec]) -> Result<Self> {
        let mut basis = EchelonBasis::new(cols);
        let mut combos = Vec::new();
        for (i, v) in inputs.iter().enumerate() {
            if v.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: v.len(),
                });
            }
            let mut v = v.clone();
            let mut combo = BitVec::unit(inputs.len(), i);
            basis.reduce_tracked(&mut v, |r| combo.xor_assign(&combos[r]));
            if let Some(p) = v.first_one() {
                basis.row_of_pivot[p] = Some(basis.rows.len());
                basis.rows.push(v);
                combos.push(combo);
            }
        }
        Ok(SpanSolver {
            basis,
            inputs: inputs.len(),
            combos,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// Coefficients `x` over the inputs with `Σ x_i input_i = target`, if any.
    pub fn solve(&self, target: &BitVec) -> Result<Option<BitVec>> {
        if target.len() != self.basis.cols {
            return Err(Error::DimensionMismatch {
                expected: self.basis.cols,
                actual: target.len(),
            });
        }
        let mut v = target.clone();
        let mut x = BitVec::zeros(self.inputs);
        self.basis
            .reduce_tracked(&mut v, |r| x.xor_assign(&self.combos[r]));
        Ok(v.is_zero().then_some(x))
    }
}

/// An ordered list of coordinate labels shared by subspaces of one graded piece.
#[derive(Debug, PartialEq, Eq)]
pub struct Ambient {
    labels: Vec<String>,
}

impl Ambient {
    pub fn new(labels: Vec<String>) -> Arc<Self> {
        Arc::new(Ambient { labels })
    }

    /// Coordinates labelled `e0, e1, …`.
    pub fn anonymous(dim: usize) -> Arc<Self> {
        Ambient::new((0..dim).map(|i| format!("e{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

fn same_ambient(a: &Arc<Ambient>, b: &Arc<Ambient>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A subspace of one graded piece, stored as an RREF basis without zero rows.
#[derive(Clone)]
pub struct GradedSubspace {
    degree: u32,
    ambient: Arc<Ambient>,
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl GradedSubspace {
    pub fn zero(degree: u32, ambient: Arc<Ambient>) -> Self {
        let dim = ambient.dim();
        GradedSubspace {
            degree,
            ambient,
            basis: BitMatrix::zeros(0, dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(degree: u32, ambient: Arc<Ambient>) -> Self {
        let dim = ambient.dim();
        GradedSubspace {
            degree,
            ambient,
            basis: BitMatrix::identity(dim),
            pivots: (0..dim).collect(),
        }
    }

    /// The span of `rows`, streamed through an echelon accumulator.
    pub fn span(
        degree: u32,
        ambient: Arc<Ambient>,
        rows: impl IntoIterator<Item = BitVec>,
    ) -> Result<Self> {
        let mut acc = EchelonBasis::new(ambient.dim());
        for r in rows {
            if r.len() != ambient.dim() {
                return Err(Error::DimensionMismatch {
                    expected: ambient.dim(),
                    actual: r.len(),
                });
            }
            if acc.rank() < ambient.dim() {
                acc.insert(r);
            }
        }
        Ok(GradedSubspace::from_echelon(degree, ambient, &acc))
    }

    pub fn from_echelon(degree: u32, ambient: Arc<Ambient>, acc: &EchelonBasis) -> Self {
        assert_eq!(acc.cols(), ambient.dim());
        let basis = acc.to_rref();
        let pivots = acc.pivots();
        GradedSubspace {
            degree,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// `dim(ambient) - dim(self)`.
    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = BitVec> + '_ {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }

    fn check_len(&self, v: &BitVec) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                actual: v.len(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &GradedSubspace) -> Result<()> {
        if self.degree != other.degree || !same_ambient(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec> {
        self.check_len(v)?;
        let mut v = v.clone();
        for (r, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                v.xor_assign(&self.basis.row(r));
            }
        }
        Ok(v)
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn sum(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_compatible(other)?;
        GradedSubspace::span(
            self.degree,
            self.ambient.clone(),
            self.basis_vectors().chain(other.basis_vectors()),
        )
    }

    /// `A ∩ B` from the kernel of the map `(x, y) ↦ xA + yB`.
    pub fn intersect(&self, other: &GradedSubspace) -> Result<GradedSubspace> {
        self.check_compatible(other)?;
        let k = self.dim();
        let stacked = self.basis.stack(&other.basis)?;
        let relations = stacked.transpose().kernel();
        let vectors = relations.row_vectors().map(|rel| {
            let mut v = BitVec::zeros(self.ambient_dim());
            for i in rel.ones().take_while(|&i| i < k) {
                v.xor_assign(&self.basis.row(i));
            }
            v
        });
        let vectors: Vec<BitVec> = vectors.collect();
        GradedSubspace::span(self.degree, self.ambient.clone(), vectors)
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First basis vector of `self` that is not in `other`.
    pub fn witness_outside(&self, other: &GradedSubspace) -> Result<Option<BitVec>> {
        self.check_compatible(other)?;
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }

    /// Same subspace of the same ambient space.
    pub fn same_as(&self, other: &GradedSubspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis == other.basis)
    }
}

impl fmt::Debug for GradedSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSubspace")
            .field("degree", &self.degree)
            .field("ambient_dim", &self.ambient_dim())
            .field("dim", &self.dim())
            .finish()
    }
}
