//! Dense linear algebra over GF(2).
//!
//! Vectors are packed 64 bits to a limb, bit `i` of the vector living at bit
//! `i % 64` of limb `i / 64`. Bits above the declared length are always zero,
//! so the derived equality and hashing are sound.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the code dimension for brute-force enumeration.
pub const DEFAULT_MAX_DIMENSION: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    limbs: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from integer entries, rejecting anything but 0 and 1.
    pub fn from_entries<T: Copy + Into<i64>>(entries: &[T]) -> Result<Self> {
        let mut v = Self::zeros(entries.len());
        for (index, &e) in entries.iter().enumerate() {
            match e.into() {
                0 => {}
                1 => v.set(index, true),
                value => return Err(Error::NotBinary { index, value }),
            }
        }
        Ok(v)
    }

    /// Reduces integer entries modulo 2.
    pub fn from_parities<T: Copy + Into<i64>>(entries: &[T]) -> Self {
        let mut v = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            v.set(i, e.into().rem_euclid(2) == 1);
        }
        v
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.limbs[index >> 6] >> (index & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index & 63);
        if value {
            self.limbs[index >> 6] |= mask;
        } else {
            self.limbs[index >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.limbs[index >> 6] ^= 1u64 << (index & 63);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn hamming_distance(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "distance between vectors of different lengths");
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn to_u8s(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }
}

impl Ord for BitVector {
    /// Lexicographic on `(x_1, ..., x_n)` with `0 < 1`; shorter vectors first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.limbs.iter().zip(&other.limbs) {
                match a.reverse_bits().cmp(&b.reverse_bits()) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl std::str::FromStr for BitVector {
    type Err = Error;

    /// Accepts `1011010` or a comma/space separated list such as `1,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<&str> = if s.contains([',', ' ']) {
            s.split([',', ' ']).filter(|t| !t.is_empty()).collect()
        } else {
            s.split("").filter(|t| !t.is_empty()).collect()
        };
        let mut bits = Vec::with_capacity(tokens.len());
        for (index, t) in tokens.iter().enumerate() {
            match *t {
                "0" => bits.push(false),
                "1" => bits.push(true),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "bit {index} is {other:?}, expected 0 or 1"
                    )))
                }
            }
        }
        Ok(BitVector::from_bools(&bits))
    }
}

/// A 0/1 matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from nested integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut packed = Vec::with_capacity(rows.len());
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    what: "matrix row",
                    expected: cols,
                    found: r.len(),
                });
            }
            packed.push(BitVector::from_entries(r)?);
        }
        Ok(Self { cols, rows: packed })
    }

    pub fn from_bit_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                what: "matrix row",
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value)
    }

    pub fn row(&self, row: usize) -> &BitVector {
        &self.rows[row]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row_weight(&self, row: usize) -> usize {
        self.rows[row].weight()
    }

    pub fn col_weight(&self, col: usize) -> usize {
        self.rows.iter().filter(|r| r.get(col)).count()
    }

    /// Row indices `j` with `h_ji = 1`.
    pub fn col_support(&self, col: usize) -> Vec<usize> {
        (0..self.num_rows()).filter(|&j| self.get(j, col)).collect()
    }

    pub fn num_ones(&self) -> usize {
        self.rows.iter().map(BitVector::weight).sum()
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.num_rows());
        for (j, r) in self.rows.iter().enumerate() {
            for i in r.support() {
                t.set(i, j, true);
            }
        }
        t
    }

    /// Reduced row echelon form by Gaussian elimination, pivots taken in row
    /// order. Returns the reduced matrix and its pivot columns.
    pub fn row_reduce(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == m.rows.len() {
                break;
            }
            let Some(p) = (next..m.rows.len()).find(|&r| m.rows[r].get(col)) else {
                continue;
            };
            m.rows.swap(next, p);
            let pivot_row = m.rows[next].clone();
            for r in 0..m.rows.len() {
                if r != next && m.rows[r].get(col) {
                    m.rows[r].xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// A basis of `{x : H x^T = 0}`, one vector per free column.
    pub fn nullspace_basis(&self) -> Vec<BitVector> {
        let (reduced, pivots) = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.get(r, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.num_rows(), self.cols)?;
        for (j, r) in self.rows.iter().enumerate() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

/// A code given as the null space of a parity-check matrix.
#[derive(Clone, Debug)]
pub struct CodeDescription {
    pub parity: BinaryMatrix,
    pub dimension: usize,
    pub nullspace_basis: Vec<BitVector>,
}

impl CodeDescription {
    pub fn new(parity: BinaryMatrix) -> Self {
        let nullspace_basis = parity.nullspace_basis();
        Self {
            dimension: nullspace_basis.len(),
            nullspace_basis,
            parity,
        }
    }

    pub fn len(&self) -> usize {
        self.parity.num_cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `H x^T` over GF(2).
pub fn syndrome(h: &BinaryMatrix, x: &BitVector) -> Result<BitVector> {
    if x.len() != h.num_cols() {
        return Err(Error::DimensionMismatch {
            what: "vector length",
            expected: h.num_cols(),
            found: x.len(),
        });
    }
    let bits: Vec<bool> = h.rows().iter().map(|row| row.dot(x)).collect();
    Ok(BitVector::from_bools(&bits))
}

pub fn is_codeword(h: &BinaryMatrix, x: &BitVector) -> Result<bool> {
    Ok(syndrome(h, x)?.is_zero())
}

/// All codewords of the null space of `h`, sorted lexicographically.
pub fn enumerate_codewords(h: &BinaryMatrix, max_dimension: usize) -> Result<Vec<BitVector>> {
    let basis = h.nullspace_basis();
    span(&basis, h.num_cols(), max_dimension)
}

/// Every GF(2) combination of `generators`, deduplicated and sorted.
pub fn span(generators: &[BitVector], len: usize, max_dimension: usize) -> Result<Vec<BitVector>> {
    // Reduce first so dependent generators do not inflate the walk.
    let basis = if generators.is_empty() {
        Vec::new()
    } else {
        let m = BinaryMatrix::from_bit_rows(len, generators.to_vec())?;
        let (reduced, pivots) = m.row_reduce();
        reduced.rows()[..pivots.len()].to_vec()
    };
    let k = basis.len();
    if k > max_dimension {
        return Err(Error::Capacity {
            what: "code dimension",
            bound: max_dimension,
            found: k,
        });
    }
    let mut words = Vec::with_capacity(1usize << k);
    let mut current = BitVector::zeros(len);
    words.push(current.clone());
    // Gray-code walk: step t flips the generator at the lowest set bit of t.
    for t in 1usize..(1usize << k) {
        current.xor_assign(&basis[t.trailing_zeros() as usize]);
        words.push(current.clone());
    }
    words.sort();
    Ok(words)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlDecision {
    pub codeword: BitVector,
    pub distance: usize,
    /// Whether the minimizing codeword is unique.
    pub unique: bool,
}

/// Brute-force maximum-likelihood decoding on the binary symmetric channel.
///
/// Ties resolve to the lexicographically least codeword at minimum distance.
pub fn ml_decode_bsc(h: &BinaryMatrix, received: &BitVector, max_dimension: usize) -> Result<MlDecision> {
    if received.len() != h.num_cols() {
        return Err(Error::DimensionMismatch {
            what: "received word length",
            expected: h.num_cols(),
            found: received.len(),
        });
    }
    let words = enumerate_codewords(h, max_dimension)?;
    let mut best: Option<(usize, usize)> = None;
    let mut ties = 0;
    for (idx, w) in words.iter().enumerate() {
        let d = w.hamming_distance(received);
        match best {
            Some((bd, _)) if d > bd => {}
            Some((bd, _)) if d == bd => ties += 1,
            _ => {
                best = Some((d, idx));
                ties = 1;
            }
        }
    }
    let (distance, idx) = best.expect("a code always contains the zero word");
    Ok(MlDecision {
        codeword: words[idx].clone(),
        distance,
        unique: ties == 1,
    })
}
