//! Finite covers of Tanner graphs.
//!
//! An `M`-cover is stored as one permutation `sigma` of `0..M` per base edge
//! `(bit i, check j)`: check fiber `(j, l)` is joined to bit fiber
//! `(i, sigma(l))`. Every cover arises this way and every assignment of
//! permutations is a cover, so nothing else needs storing.
//!
//! Fibers are numbered from 0 in code and from 1 in serialized output.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector};
use crate::tanner::TannerGraph;

/// Identifier of the generator behind [`random_cover`], for report metadata.
pub const RNG_ALGORITHM: &str = "chacha8 (rand_chacha 0.3, seed_from_u64) + fisher-yates shuffle";

/// A permutation of `0..len`, stored as its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Self((0..len).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &k in &images {
            if k >= images.len() || std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidCover(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, l: usize) -> usize {
        self.0[l]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (l, &k) in self.0.iter().enumerate() {
            inv[k] = l;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    base: TannerGraph,
    m: usize,
    perms: Vec<Permutation>,
}

impl CoverSpec {
    /// `perms[t]` is the permutation on base edge `t` (Tanner edge order).
    pub fn new(base: TannerGraph, m: usize, perms: Vec<Permutation>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidCover("cover degree must be at least 1".into()));
        }
        if perms.len() != base.num_edges() {
            return Err(Error::DimensionMismatch {
                what: "permutations per base edge",
                expected: base.num_edges(),
                found: perms.len(),
            });
        }
        if let Some((t, p)) = perms.iter().enumerate().find(|(_, p)| p.len() != m) {
            return Err(Error::InvalidCover(format!(
                "permutation on edge {t} acts on {} points, expected {m}",
                p.len()
            )));
        }
        Ok(Self { base, m, perms })
    }

    pub fn trivial(base: TannerGraph, m: usize) -> Result<Self> {
        let perms = vec![Permutation::identity(m); base.num_edges()];
        Self::new(base, m, perms)
    }

    pub fn base(&self) -> &TannerGraph {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn perm(&self, bit: usize, check: usize) -> Option<&Permutation> {
        self.base.edge_index(bit, check).map(|t| &self.perms[t])
    }

    /// Whether check fiber `(check, l)` is joined to bit fiber `(bit, k)`.
    pub fn has_edge(&self, bit: usize, k: usize, check: usize, l: usize) -> bool {
        k < self.m && l < self.m && self.perm(bit, check).is_some_and(|p| p.apply(l) == k)
    }

    /// Rows `(j, l)` at `j*M + l`, columns `(i, k)` at `i*M + k`.
    pub fn lifted_parity_matrix(&self) -> BinaryMatrix {
        let m = self.m;
        let mut h = BinaryMatrix::zeros(self.base.num_checks() * m, self.base.num_bits() * m);
        for (&(bit, check), perm) in self.base.edges().iter().zip(&self.perms) {
            for l in 0..m {
                h.set(check * m + l, bit * m + perm.apply(l), true);
            }
        }
        h
    }

    /// Relabels bit fibers by `bit_relabel[i]` and check fibers by
    /// `check_relabel[j]`, so that old fiber `x` becomes fiber `relabel(x)`.
    pub fn relabeled(&self, bit_relabel: &[Permutation], check_relabel: &[Permutation]) -> CoverSpec {
        let perms = self
            .base
            .edges()
            .iter()
            .zip(&self.perms)
            .map(|(&(bit, check), sigma)| {
                bit_relabel[bit]
                    .compose(sigma)
                    .compose(&check_relabel[check].inverse())
            })
            .collect();
        CoverSpec {
            base: self.base.clone(),
            m: self.m,
            perms,
        }
    }

    pub fn to_doc(&self) -> CoverSpecDoc {
        CoverSpecDoc {
            m: self.m,
            edges: self
                .base
                .edges()
                .iter()
                .zip(&self.perms)
                .map(|(&(bit, check), p)| CoverEdgeDoc {
                    check: check + 1,
                    bit: bit + 1,
                    perm: p.images().iter().map(|k| k + 1).collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds a cover of `base` from its serialized form. Every base edge
    /// must be listed exactly once.
    pub fn from_doc(base: TannerGraph, doc: &CoverSpecDoc) -> Result<Self> {
        let mut perms: Vec<Option<Permutation>> = vec![None; base.num_edges()];
        for e in &doc.edges {
            let (Some(bit), Some(check)) = (e.bit.checked_sub(1), e.check.checked_sub(1)) else {
                return Err(Error::InvalidCover("indices are 1-based".into()));
            };
            let t = base.edge_index(bit, check).ok_or_else(|| {
                Error::InvalidCover(format!("({}, {}) is not an edge of the base graph", e.check, e.bit))
            })?;
            let images = e
                .perm
                .iter()
                .map(|&k| k.checked_sub(1).ok_or_else(|| Error::InvalidCover("images are 1-based".into())))
                .collect::<Result<Vec<_>>>()?;
            if perms[t].replace(Permutation::from_images(images)?).is_some() {
                return Err(Error::InvalidCover(format!("edge ({}, {}) listed twice", e.check, e.bit)));
            }
        }
        let perms = perms
            .into_iter()
            .enumerate()
            .map(|(t, p)| p.ok_or_else(|| Error::InvalidCover(format!("base edge {t} has no permutation"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, doc.m, perms)
    }
}

/// Serialized cover: `{"M": .., "edges": [{"check", "bit", "perm"}]}`, all
/// indices 1-based, `perm` listing the images of `1..M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverSpecDoc {
    #[serde(rename = "M")]
    pub m: usize,
    pub edges: Vec<CoverEdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEdgeDoc {
    pub check: usize,
    pub bit: usize,
    pub perm: Vec<usize>,
}

/// A word on the bit fibers of an `M`-cover, in block order
/// `(x_(1,1), .., x_(1,M), .., x_(n,1), .., x_(n,M))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverWord {
    m: usize,
    bits: BitVector,
}

impl CoverWord {
    pub fn new(m: usize, bits: BitVector) -> Result<Self> {
        if m == 0 || !bits.len().is_multiple_of(m) {
            return Err(Error::DimensionMismatch {
                what: "cover word length (multiple of M)",
                expected: m * (bits.len() / m.max(1)),
                found: bits.len(),
            });
        }
        Ok(Self { m, bits })
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        Self {
            m,
            bits: BitVector::zeros(n * m),
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of base bits.
    pub fn base_len(&self) -> usize {
        self.bits.len() / self.m
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn get(&self, bit: usize, k: usize) -> bool {
        assert!(k < self.m);
        self.bits.get(bit * self.m + k)
    }

    pub fn set(&mut self, bit: usize, k: usize, value: bool) {
        assert!(k < self.m);
        self.bits.set(bit * self.m + k, value)
    }

    /// Word with entry `(i, k)` moved to `(i, relabel[i](k))`.
    pub fn relabeled(&self, bit_relabel: &[Permutation]) -> CoverWord {
        let mut out = CoverWord::zeros(self.base_len(), self.m);
        for (i, tau) in bit_relabel.iter().enumerate().take(self.base_len()) {
            for k in 0..self.m {
                out.set(i, tau.apply(k), self.get(i, k));
            }
        }
        out
    }
}

impl std::fmt::Display for CoverWord {
    /// `1:0, 1:0, ..` with one colon-separated block per base bit.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.base_len() {
            if i > 0 {
                f.write_str(", ")?;
            }
            for k in 0..self.m {
                if k > 0 {
                    f.write_str(":")?;
                }
                f.write_str(if self.get(i, k) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// Repeats each coordinate of `c` across its fiber.
pub fn lift_codeword(c: &BitVector, m: usize) -> CoverWord {
    let mut w = CoverWord::zeros(c.len(), m);
    for i in c.support() {
        for k in 0..m {
            w.set(i, k, true);
        }
    }
    w
}

pub fn is_cover_codeword(cov: &CoverSpec, w: &CoverWord) -> Result<bool> {
    check_word_shape(cov, w)?;
    let m = cov.degree();
    let base = cov.base();
    for check in 0..base.num_checks() {
        for l in 0..m {
            let parity = base
                .check_neighbors(check)
                .iter()
                .filter(|&&bit| w.get(bit, cov.perm(bit, check).expect("adjacent").apply(l)))
                .count();
            if parity % 2 == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_word_shape(cov: &CoverSpec, w: &CoverWord) -> Result<()> {
    if w.degree() != cov.degree() {
        return Err(Error::DimensionMismatch {
            what: "cover degree M",
            expected: cov.degree(),
            found: w.degree(),
        });
    }
    if w.base_len() != cov.base().num_bits() {
        return Err(Error::DimensionMismatch {
            what: "cover word blocks",
            expected: cov.base().num_bits(),
            found: w.base_len(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoCodeword {
    /// Ones per fiber block.
    pub unscaled: Vec<u64>,
    /// `unscaled / M`.
    pub normalized: Vec<BigRational>,
}

pub fn pseudo_codeword(w: &CoverWord) -> PseudoCodeword {
    let m = w.degree();
    let unscaled: Vec<u64> = (0..w.base_len())
        .map(|i| (0..m).filter(|&k| w.get(i, k)).count() as u64)
        .collect();
    let normalized = unscaled
        .iter()
        .map(|&p| BigRational::new(BigInt::from(p), BigInt::from(m)))
        .collect();
    PseudoCodeword { unscaled, normalized }
}

/// Hamming distance between two words on the same cover degree, divided by `M`.
pub fn scaled_cover_distance(a: &CoverWord, b: &CoverWord) -> Result<BigRational> {
    if a.degree() != b.degree() || a.bits().len() != b.bits().len() {
        return Err(Error::DimensionMismatch {
            what: "cover word length",
            expected: a.bits().len(),
            found: b.bits().len(),
        });
    }
    Ok(BigRational::new(
        BigInt::from(a.bits().hamming_distance(b.bits())),
        BigInt::from(a.degree()),
    ))
}

/// A cover with an independent uniformly random permutation on every base
/// edge, drawn from a generator seeded by `seed` alone.
pub fn random_cover(base: &TannerGraph, m: usize, seed: u64) -> Result<CoverSpec> {
    if m == 0 {
        return Err(Error::InvalidArgument("cover degree M must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms = (0..base.num_edges())
        .map(|_| {
            let mut images: Vec<usize> = (0..m).collect();
            images.shuffle(&mut rng);
            Permutation(images)
        })
        .collect();
    CoverSpec::new(base.clone(), m, perms)
}

/// Checks directly on a lifted matrix that it is the matrix of an `m`-cover
/// of `base`: every fiber vertex sees exactly one fiber of each base
/// neighbour and nothing else.
pub fn is_cover_matrix(base: &BinaryMatrix, lifted: &BinaryMatrix, m: usize) -> bool {
    let (r, n) = (base.num_rows(), base.num_cols());
    if lifted.num_rows() != r * m || lifted.num_cols() != n * m {
        return false;
    }
    for j in 0..r {
        for i in 0..n {
            let block_ones = |fix_row: Option<usize>, fix_col: Option<usize>| {
                (0..m)
                    .filter(|&x| {
                        let row = j * m + fix_row.unwrap_or(x);
                        let col = i * m + fix_col.unwrap_or(x);
                        lifted.get(row, col)
                    })
                    .count()
            };
            let expected = usize::from(base.get(j, i));
            for l in 0..m {
                // Check fiber (j, l) against the fibers of bit i, and bit fiber
                // (i, l) against the fibers of check j.
                if block_ones(Some(l), None) != expected || block_ones(None, Some(l)) != expected {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::dumbbell;
    use crate::gf2::syndrome;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    /// The double cover with swaps on edges (check 2, bit 2) and (check 4, bit 7).
    fn example_cover() -> CoverSpec {
        let base = TannerGraph::from_parity_matrix(&dumbbell());
        let mut perms = vec![Permutation::identity(2); base.num_edges()];
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        perms[base.edge_index(1, 1).unwrap()] = swap.clone();
        perms[base.edge_index(6, 3).unwrap()] = swap;
        CoverSpec::new(base, 2, perms).unwrap()
    }

    fn a_tilde() -> CoverWord {
        CoverWord::new(2, "10101011101010".parse().unwrap()).unwrap()
    }

    #[test]
    fn lifted_matrix_matches_block_layout() {
        let i = [[1u8, 0], [0, 1]];
        let j = [[0u8, 1], [1, 0]];
        let z = [[0u8, 0], [0, 0]];
        let blocks = [
            [i, i, z, z, z, z, z],
            [z, j, i, i, z, z, z],
            [i, z, i, z, z, z, z],
            [z, z, z, i, i, z, j],
            [z, z, z, z, i, i, z],
            [z, z, z, z, z, i, i],
        ];
        let mut rows = Vec::new();
        for block_row in &blocks {
            for l in 0..2 {
                rows.push(block_row.iter().flat_map(|b| b[l]).collect::<Vec<u8>>());
            }
        }
        let expected = BinaryMatrix::from_rows(&rows).unwrap();
        let lifted = example_cover().lifted_parity_matrix();
        assert_eq!(lifted, expected);
        assert!(is_cover_matrix(&dumbbell(), &lifted, 2));
    }

    #[test]
    fn trivial_covers() {
        let base = TannerGraph::from_parity_matrix(&dumbbell());
        let one = CoverSpec::trivial(base.clone(), 1).unwrap();
        assert_eq!(one.lifted_parity_matrix(), dumbbell());
        let three = CoverSpec::trivial(base, 3).unwrap().lifted_parity_matrix();
        for j in 0..6 {
            for i in 0..7 {
                for l in 0..3 {
                    for k in 0..3 {
                        assert_eq!(three.get(j * 3 + l, i * 3 + k), dumbbell().get(j, i) && k == l);
                    }
                }
            }
        }
    }

    #[test]
    fn lifting_a_codeword() {
        let c: BitVector = "1110000".parse().unwrap();
        let w = lift_codeword(&c, 2);
        assert_eq!(w.to_string(), "1:1, 1:1, 1:1, 0:0, 0:0, 0:0, 0:0");
        assert!(is_cover_codeword(&example_cover(), &w).unwrap());
        assert_eq!(lift_codeword(&BitVector::zeros(4), 3), CoverWord::zeros(4, 3));
    }

    #[test]
    fn non_lifted_cover_codeword() {
        let cov = example_cover();
        let a = a_tilde();
        assert_eq!(a.to_string(), "1:0, 1:0, 1:0, 1:1, 1:0, 1:0, 1:0");
        assert!(is_cover_codeword(&cov, &a).unwrap());
        assert!(syndrome(&cov.lifted_parity_matrix(), a.bits()).unwrap().is_zero());
        assert!(is_cover_codeword(&cov, &CoverWord::zeros(7, 2)).unwrap());
        let mut single = CoverWord::zeros(7, 2);
        single.set(0, 0, true);
        assert!(!is_cover_codeword(&cov, &single).unwrap());
        assert!(is_cover_codeword(&cov, &CoverWord::zeros(7, 3)).is_err());
    }

    #[test]
    fn pseudo_codewords_of_example_words() {
        let p = pseudo_codeword(&a_tilde());
        assert_eq!(p.unscaled, vec![1, 1, 1, 2, 1, 1, 1]);
        let half = rat(1, 2);
        let one = rat(1, 1);
        assert_eq!(
            p.normalized,
            vec![half.clone(), half.clone(), half.clone(), one, half.clone(), half.clone(), half]
        );
        let c: BitVector = "1110000".parse().unwrap();
        let lifted = pseudo_codeword(&lift_codeword(&c, 3));
        let as_rat: Vec<_> = c.iter().map(|b| rat(b as i64, 1)).collect();
        assert_eq!(lifted.normalized, as_rat);
        let zero = pseudo_codeword(&CoverWord::zeros(3, 2));
        assert_eq!(zero.unscaled, vec![0, 0, 0]);
    }

    #[test]
    fn scaled_distance() {
        let y: BitVector = "1011010".parse().unwrap();
        let y_hat = lift_codeword(&y, 2);
        assert_eq!(scaled_cover_distance(&y_hat, &a_tilde()).unwrap(), rat(3, 1));
        assert_eq!(scaled_cover_distance(&y_hat, &y_hat).unwrap(), rat(0, 1));
        let c: BitVector = "1110000".parse().unwrap();
        assert_eq!(
            scaled_cover_distance(&lift_codeword(&y, 1), &lift_codeword(&c, 1)).unwrap(),
            rat(3, 1)
        );
        assert!(scaled_cover_distance(&y_hat, &lift_codeword(&y, 3)).is_err());
    }

    #[test]
    fn random_cover_is_deterministic() {
        let base = TannerGraph::from_parity_matrix(&dumbbell());
        assert_eq!(random_cover(&base, 3, 7).unwrap(), random_cover(&base, 3, 7).unwrap());
        assert_ne!(random_cover(&base, 3, 7).unwrap(), random_cover(&base, 3, 8).unwrap());
        assert_eq!(
            random_cover(&base, 1, 99).unwrap(),
            CoverSpec::trivial(base.clone(), 1).unwrap()
        );
        assert!(random_cover(&base, 0, 1).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let cov = example_cover();
        let doc = cov.to_doc();
        assert_eq!(doc.edges[0], CoverEdgeDoc { check: 1, bit: 1, perm: vec![1, 2] });
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.starts_with("{\"M\":2,\"edges\":["));
        let back: CoverSpecDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(CoverSpec::from_doc(cov.base().clone(), &back).unwrap(), cov);

        let mut bad = doc.clone();
        bad.edges.pop();
        assert!(CoverSpec::from_doc(cov.base().clone(), &bad).is_err());
        let mut bad = doc;
        bad.edges[0].perm = vec![1, 1];
        assert!(CoverSpec::from_doc(cov.base().clone(), &bad).is_err());
    }

    mod props {
        use super::*;
        use crate::gf2::enumerate_codewords;
        use proptest::prelude::*;

        fn perm(m: usize) -> impl Strategy<Value = Permutation> {
            Just((0..m).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        proptest! {
            #[test]
            fn random_covers_are_covers(m in 1usize..5, seed in any::<u64>()) {
                let base = TannerGraph::from_parity_matrix(&dumbbell());
                let cov = random_cover(&base, m, seed).unwrap();
                prop_assert!(is_cover_matrix(&dumbbell(), &cov.lifted_parity_matrix(), m));
            }

            #[test]
            fn lifted_codewords_stay_codewords(m in 1usize..5, seed in any::<u64>()) {
                let h = dumbbell();
                let cov = random_cover(&TannerGraph::from_parity_matrix(&h), m, seed).unwrap();
                for c in enumerate_codewords(&h, 24).unwrap() {
                    let w = lift_codeword(&c, m);
                    prop_assert!(is_cover_codeword(&cov, &w).unwrap());
                    prop_assert!(syndrome(&cov.lifted_parity_matrix(), w.bits()).unwrap().is_zero());
                }
            }

            #[test]
            fn relabeling_preserves_codewords(
                seed in any::<u64>(),
                bit_relabel in proptest::collection::vec(perm(2), 7),
                check_relabel in proptest::collection::vec(perm(2), 6),
            ) {
                let cov = if seed % 2 == 0 {
                    example_cover()
                } else {
                    random_cover(&TannerGraph::from_parity_matrix(&dumbbell()), 2, seed).unwrap()
                };
                let moved = cov.relabeled(&bit_relabel, &check_relabel);
                prop_assert!(is_cover_matrix(&dumbbell(), &moved.lifted_parity_matrix(), 2));
                let words = enumerate_codewords(&cov.lifted_parity_matrix(), 24).unwrap();
                for bits in words {
                    let w = CoverWord::new(2, bits).unwrap();
                    prop_assert!(is_cover_codeword(&moved, &w.relabeled(&bit_relabel)).unwrap());
                    let p = pseudo_codeword(&w);
                    prop_assert_eq!(&p.unscaled, &pseudo_codeword(&w.relabeled(&bit_relabel)).unscaled);
                    prop_assert!(p.unscaled.iter().all(|&x| x <= 2));
                    let integral = p.normalized.iter().all(|x| x.is_integer());
                    let lifted = (0..7).all(|i| w.get(i, 0) == w.get(i, 1));
                    prop_assert_eq!(integral, lifted);
                }
            }
        }
    }
}
