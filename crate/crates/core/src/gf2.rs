//! Dense bit-packed linear algebra over the two-element field.
//!
//! Elimination always pivots on the first nonzero column and the lowest
//! available row index, so every basis produced here is reproducible.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector {index} of the independent set is linearly dependent on the preceding ones")]
    Dependent { index: usize },
    #[error("vector {index} of the independent set is not in the span of the spanning set")]
    NotInSpan { index: usize },
}

/// A vector over F2 packed into 64-bit words. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    words: Vec<u64>,
    len: usize,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at the given positions.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// In-place addition. Panics on length mismatch.
    pub fn add_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch in vector addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Inner product over F2.
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot product");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Indices of set bits in increasing order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * WORD + tz)
                }
            })
        })
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over F2 stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows. Every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self, Gf2Error> {
        for r in &rows {
            if r.len() != cols {
                return Err(Gf2Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Gf2Vector]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Gf2Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                Gf2Vector::from_bits(r.iter().map(|&b| b != 0))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_bits(self.data.iter().map(|r| r.get(j)))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for j in r.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Result<Gf2Vector, Gf2Error> {
        if x.len() != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(Gf2Vector::from_bits(self.data.iter().map(|r| r.dot(x))))
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if other.rows != self.cols {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            for k in r.ones() {
                out.data[i].add_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vector::is_zero)
    }

    /// Reduced row echelon form and its pivot columns.
    fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.eliminate(self.cols);
        (m, pivots)
    }

    /// Gauss-Jordan elimination restricted to the first `limit` columns.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..limit {
            if next_row == self.rows {
                break;
            }
            let Some(p) = (next_row..self.rows).find(|&r| self.data[r].get(col)) else {
                continue;
            };
            self.data.swap(next_row, p);
            let pivot_row = self.data[next_row].clone();
            for r in 0..self.rows {
                if r != next_row && self.data[r].get(col) {
                    self.data[r].add_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.rref().1.len()
}

/// Basis of the null space, one vector per free column in increasing order.
pub fn kernel_basis(m: &Gf2Matrix) -> Vec<Gf2Vector> {
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = Gf2Vector::unit(m.cols, free);
            for (row, &p) in pivots.iter().enumerate() {
                if r.data[row].get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Some `x` with `m * x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Gf2Matrix, b: &Gf2Vector) -> Result<Option<Gf2Vector>, Gf2Error> {
    if b.len() != m.rows {
        return Err(Gf2Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let cols = m.cols;
    let rows = m
        .data
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut aug = Gf2Vector::zeros(cols + 1);
            for j in r.ones() {
                aug.set(j, true);
            }
            aug.set(cols, b.get(i));
            aug
        })
        .collect();
    let mut aug = Gf2Matrix::from_rows(cols + 1, rows)?;
    let pivots = aug.eliminate(cols);
    if aug.data[pivots.len()..].iter().any(|r| r.get(cols)) {
        return Ok(None);
    }
    let mut x = Gf2Vector::zeros(cols);
    for (row, &p) in pivots.iter().enumerate() {
        if aug.data[row].get(cols) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

/// Completes a linearly independent family inside `span(spanning)` to a basis
/// of that span, appending spanning vectors greedily in list order.
pub fn extend_to_basis(
    independent: &[Gf2Vector],
    spanning: &[Gf2Vector],
) -> Result<Vec<Gf2Vector>, Gf2Error> {
    let len = independent
        .first()
        .or_else(|| spanning.first())
        .map_or(0, Gf2Vector::len);
    let mut span = EchelonBasis::new(len);
    for v in spanning {
        span.insert(v)?;
    }
    let mut basis = EchelonBasis::new(len);
    let mut out = Vec::new();
    for (index, v) in independent.iter().enumerate() {
        if !basis.insert(v)? {
            return Err(Gf2Error::Dependent { index });
        }
        if !span.contains(v)? {
            return Err(Gf2Error::NotInSpan { index });
        }
        out.push(v.clone());
    }
    for v in spanning {
        if basis.insert(v)? {
            out.push(v.clone());
        }
    }
    Ok(out)
}

/// Incrementally built echelon basis that also remembers how each reduced
/// vector is written in terms of the inserted generators.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    // (pivot, reduced vector, combination of generators)
    rows: Vec<(usize, Gf2Vector, Vec<usize>)>,
    generators: usize,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            generators: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, v: &Gf2Vector) -> Result<(), Gf2Error> {
        if v.len() != self.len {
            return Err(Gf2Error::DimensionMismatch {
                expected: self.len,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Reduces `v` against the basis; returns the residue and the generator
    /// combination (as a parity set) that was subtracted.
    fn reduce(&self, v: &Gf2Vector) -> (Gf2Vector, Vec<bool>) {
        let mut r = v.clone();
        let mut combo = vec![false; self.generators];
        for (pivot, row, c) in &self.rows {
            if r.get(*pivot) {
                r.add_assign(row);
                for &g in c {
                    combo[g] ^= true;
                }
            }
        }
        (r, combo)
    }

    /// Adds `v` as a generator. Returns whether it enlarged the span.
    pub fn insert(&mut self, v: &Gf2Vector) -> Result<bool, Gf2Error> {
        self.check(v)?;
        let (r, mut combo) = self.reduce(v);
        let Some(pivot) = r.first_one() else {
            return Ok(false);
        };
        let generator = self.generators;
        self.generators += 1;
        combo.push(true);
        let combo: Vec<usize> = combo
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        // keep rows fully reduced against the new pivot
        for (_, row, c) in &mut self.rows {
            if row.get(pivot) {
                row.add_assign(&r);
                let mut parity = vec![false; generator + 1];
                for &g in c.iter().chain(&combo) {
                    parity[g] ^= true;
                }
                *c = parity
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &b)| b.then_some(i))
                    .collect();
            }
        }
        self.rows.push((pivot, r, combo));
        Ok(true)
    }

    pub fn contains(&self, v: &Gf2Vector) -> Result<bool, Gf2Error> {
        self.check(v)?;
        Ok(self.reduce(v).0.is_zero())
    }

    /// Coordinates of `v` with respect to the generators that enlarged the
    /// span (in insertion order), or `None` if `v` lies outside the span.
    pub fn coordinates(&self, v: &Gf2Vector) -> Result<Option<Gf2Vector>, Gf2Error> {
        self.check(v)?;
        let (r, combo) = self.reduce(v);
        if !r.is_zero() {
            return Ok(None);
        }
        Ok(Some(Gf2Vector::from_bits(combo)))
    }
}
