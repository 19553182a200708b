//! Edge zeta functions of multigraphs and the pseudo-codeword lists they
//! generate.
//!
//! For a graph with edges `e_1..e_m`, the reciprocal of the edge zeta
//! function is `det(I - U M)`, where `M` is the `2m x 2m` directed edge
//! matrix and `U = diag(u_1..u_m, u_1..u_m)`. Its power series expansion has
//! a nonzero coefficient at exactly the edge-usage vectors of unions of
//! backtrackless tailless closed walks, and for a cycle code these are the
//! unscaled pseudo-codewords.

mod det;
mod poly;

pub use poly::{coefficient_of, series_expand, ExponentVector, SparsePolynomial, TermDoc, TruncatedSeries};

use det::PolyMatrix;

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::tanner::{MultiGraph, TannerGraph};

/// Default bound on `2|E|` for determinant evaluation.
pub const DEFAULT_MAX_DIRECTED_EDGES: usize = 24;

/// The directed edge matrix of a multigraph.
///
/// Slot `d < m` is edge `d` oriented from its lower to its higher endpoint
/// (or the other way if flipped); slot `m + d` is its reverse. Entry
/// `(a, b)` is 1 when `a` ends where `b` starts and `b` is not the reverse
/// of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEdgeMatrix {
    num_edges: usize,
    succ: Vec<Vec<usize>>,
}

impl DirectedEdgeMatrix {
    pub fn new(g: &MultiGraph) -> Self {
        Self::with_orientation(g, &vec![false; g.num_edges()])
    }

    /// `flipped[d]` puts edge `d`'s higher endpoint first in slot `d`.
    pub fn with_orientation(g: &MultiGraph, flipped: &[bool]) -> Self {
        let m = g.num_edges();
        assert_eq!(flipped.len(), m, "one orientation flag per edge");
        let ends = |slot: usize| {
            let d = slot % m;
            let (a, b) = g.edges()[d];
            let (lo, hi) = (a.min(b), a.max(b));
            let forward = if flipped[d] { (hi, lo) } else { (lo, hi) };
            if slot < m {
                forward
            } else {
                (forward.1, forward.0)
            }
        };
        let succ = (0..2 * m)
            .map(|a| {
                let (_, head) = ends(a);
                (0..2 * m)
                    .filter(|&b| b % m != a % m && ends(b).0 == head)
                    .collect()
            })
            .collect();
        Self { num_edges: m, succ }
    }

    pub fn size(&self) -> usize {
        self.succ.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.succ[a].binary_search(&b).is_ok()
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.succ[a]
    }

    pub fn row_sum(&self, a: usize) -> usize {
        self.succ[a].len()
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.size())
            .map(|a| (0..self.size()).map(|b| u8::from(self.get(a, b))).collect())
            .collect()
    }

    /// `det(I - U M)`, or `det(I - M U)` with `right = true`.
    fn reciprocal(&self, right: bool) -> Result<SparsePolynomial> {
        let m = self.num_edges;
        let mut mat = PolyMatrix::new(self.size(), m);
        for a in 0..self.size() {
            mat.add(a, a, vec![0; m], 1);
            for &b in &self.succ[a] {
                let var = if right { b % m } else { a % m };
                let mut e = vec![0; m];
                e[var] = 1;
                mat.add(a, b, e, -1);
            }
        }
        det::determinant(&mat)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZetaOptions {
    /// Largest `2|E|` accepted.
    pub max_directed_edges: usize,
    /// Also evaluate `det(I - M U)` and require it to match.
    pub verify: bool,
}

impl Default for ZetaOptions {
    fn default() -> Self {
        Self {
            max_directed_edges: DEFAULT_MAX_DIRECTED_EDGES,
            verify: cfg!(debug_assertions),
        }
    }
}

pub fn zeta_reciprocal(g: &MultiGraph) -> Result<SparsePolynomial> {
    zeta_reciprocal_with(g, ZetaOptions::default())
}

pub fn zeta_reciprocal_with(g: &MultiGraph, options: ZetaOptions) -> Result<SparsePolynomial> {
    reciprocal_of_matrix(&DirectedEdgeMatrix::new(g), options)
}

pub fn reciprocal_of_matrix(dem: &DirectedEdgeMatrix, options: ZetaOptions) -> Result<SparsePolynomial> {
    if dem.size() > options.max_directed_edges {
        return Err(Error::Capacity {
            what: "directed edge count 2|E| for the zeta determinant",
            bound: options.max_directed_edges,
            found: dem.size(),
        });
    }
    let left = dem.reciprocal(false)?;
    if options.verify {
        let right = dem.reciprocal(true)?;
        if left != right {
            return Err(Error::InvariantBreach(format!(
                "det(I - UM) = {left} but det(I - MU) = {right}"
            )));
        }
    }
    Ok(left)
}

/// Unscaled pseudo-codewords of the cycle code `h` with total weight at most
/// `degree`, read off the zeta function of its normal graph. Sorted by total
/// degree, then lexicographically.
pub fn enumerate_cycle_pcw(h: &BinaryMatrix, degree: u32) -> Result<Vec<ExponentVector>> {
    enumerate_cycle_pcw_with(h, degree, ZetaOptions::default())
}

pub fn enumerate_cycle_pcw_with(h: &BinaryMatrix, degree: u32, options: ZetaOptions) -> Result<Vec<ExponentVector>> {
    let g = TannerGraph::from_parity_matrix(h).normal_graph()?;
    let f = zeta_reciprocal_with(&g, options)?;
    Ok(series_expand(&f, degree)?.support())
}

/// Pseudo-codewords of a code with a bit-even Tanner graph.
///
/// The Tanner graph is treated as a plain graph with one variable per edge,
/// taken in Tanner edge order so that the edges at bit `i` form a block. The
/// zeta series is expanded to total degree `degree` in those variables, the
/// monomials that are constant on every block are kept, and each is
/// projected to the exponent of the first edge of every block.
pub fn bit_even_pcw(h: &BinaryMatrix, degree: u32) -> Result<Vec<ExponentVector>> {
    bit_even_pcw_with(h, degree, ZetaOptions::default())
}

pub fn bit_even_pcw_with(h: &BinaryMatrix, degree: u32, options: ZetaOptions) -> Result<Vec<ExponentVector>> {
    let t = TannerGraph::from_parity_matrix(h);
    if let Some(bit) = (0..t.num_bits()).find(|&b| t.bit_degree(b) % 2 == 1) {
        return Err(Error::NotBitEven {
            bit,
            degree: t.bit_degree(bit),
        });
    }
    if let Some(bit) = (0..t.num_bits()).find(|&b| t.bit_degree(b) == 0) {
        return Err(Error::IsolatedBit { bit });
    }
    let f = zeta_reciprocal_with(&t.as_multigraph(), options)?;
    let series = series_expand(&f, degree)?;
    let block_of: Vec<usize> = t.edges().iter().map(|&(bit, _)| bit).collect();
    let mut out: Vec<ExponentVector> = series
        .support()
        .into_iter()
        .filter_map(|e| {
            let mut p: Vec<Option<u32>> = vec![None; t.num_bits()];
            for (&x, &bit) in e.as_slice().iter().zip(&block_of) {
                match p[bit] {
                    None => p[bit] = Some(x),
                    Some(y) if y != x => return None,
                    Some(_) => {}
                }
            }
            Some(ExponentVector(p.into_iter().map(|x| x.expect("no isolated bits")).collect()))
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::is_unscaled_pcw;
    use crate::fixtures::{dumbbell, small_general_code, triangle_code, triangle_graph};
    use crate::tanner::duplicate_checks;
    use num_bigint::BigInt;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    fn dumbbell_graph() -> MultiGraph {
        TannerGraph::from_parity_matrix(&dumbbell()).normal_graph().unwrap()
    }

    pub(crate) fn dumbbell_reciprocal() -> SparsePolynomial {
        let t: &[(&[u32], i64)] = &[
            (&[0, 0, 0, 0, 0, 0, 0], 1),
            (&[1, 1, 1, 0, 0, 0, 0], -2),
            (&[2, 2, 2, 0, 0, 0, 0], 1),
            (&[0, 0, 0, 0, 1, 1, 1], -2),
            (&[1, 1, 1, 0, 1, 1, 1], 4),
            (&[2, 2, 2, 0, 1, 1, 1], -2),
            (&[1, 1, 1, 2, 1, 1, 1], -4),
            (&[2, 2, 2, 2, 1, 1, 1], 4),
            (&[0, 0, 0, 0, 2, 2, 2], 1),
            (&[1, 1, 1, 0, 2, 2, 2], -2),
            (&[2, 2, 2, 0, 2, 2, 2], 1),
            (&[1, 1, 1, 2, 2, 2, 2], 4),
            (&[2, 2, 2, 2, 2, 2, 2], -4),
        ];
        SparsePolynomial::from_terms(7, t.iter().map(|&(e, c)| (ev(e), BigInt::from(c))))
    }

    #[test]
    fn single_edge_matrix() {
        let g = MultiGraph::new(2, vec![(0, 1)]).unwrap();
        let dem = DirectedEdgeMatrix::new(&g);
        assert_eq!(dem.to_dense(), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(zeta_reciprocal(&g).unwrap(), SparsePolynomial::one(1));
    }

    #[test]
    fn triangle_matrix() {
        let dem = DirectedEdgeMatrix::new(&triangle_graph());
        assert_eq!(dem.size(), 6);
        assert!((0..6).all(|a| dem.row_sum(a) == 1));
    }

    #[test]
    fn dumbbell_matrix_row_sums() {
        let g = dumbbell_graph();
        let dem = DirectedEdgeMatrix::new(&g);
        assert_eq!(dem.size(), 14);
        for a in 0..14 {
            let (_, head) = g.directed_endpoints(a);
            assert_eq!(dem.row_sum(a), g.degree(head) - 1);
        }
        assert_eq!(g.degrees(), vec![2, 3, 2, 3, 2, 2]);
    }

    #[test]
    fn triangle_reciprocal() {
        let f = zeta_reciprocal(&triangle_graph()).unwrap();
        let one_minus = SparsePolynomial::from_terms(3, [(ev(&[0, 0, 0]), 1.into()), (ev(&[1, 1, 1]), (-1).into())]);
        assert_eq!(f, one_minus.mul(&one_minus));
    }

    #[test]
    fn dumbbell_reciprocal_is_exact() {
        let f = zeta_reciprocal(&dumbbell_graph()).unwrap();
        assert_eq!(f.num_terms(), 13);
        assert_eq!(f, dumbbell_reciprocal());
    }

    #[test]
    fn dumbbell_series_coefficients() {
        let s = series_expand(&zeta_reciprocal(&dumbbell_graph()).unwrap(), 14).unwrap();
        let expected: &[(&[u32], i64)] = &[
            (&[0, 0, 0, 0, 0, 0, 0], 1),
            (&[1, 1, 1, 0, 0, 0, 0], 2),
            (&[2, 2, 2, 0, 0, 0, 0], 3),
            (&[0, 0, 0, 0, 1, 1, 1], 2),
            (&[1, 1, 1, 0, 1, 1, 1], 4),
            (&[2, 2, 2, 0, 1, 1, 1], 6),
            (&[1, 1, 1, 2, 1, 1, 1], 4),
            (&[2, 2, 2, 2, 1, 1, 1], 12),
            (&[0, 0, 0, 0, 2, 2, 2], 3),
            (&[1, 1, 1, 0, 2, 2, 2], 6),
            (&[2, 2, 2, 0, 2, 2, 2], 9),
            (&[1, 1, 1, 2, 2, 2, 2], 12),
            (&[2, 2, 2, 2, 2, 2, 2], 36),
        ];
        for &(e, c) in expected {
            assert_eq!(coefficient_of(&s, &ev(e)).unwrap(), BigInt::from(c), "{e:?}");
        }
        assert_eq!(coefficient_of(&s, &ev(&[1, 0, 0, 0, 0, 0, 0])).unwrap(), BigInt::from(0));
        assert!(coefficient_of(&s, &ev(&[3, 3, 3, 0, 3, 3, 0])).is_err());
    }

    #[test]
    fn dumbbell_exponent_vectors() {
        let h = dumbbell();
        let pcws = enumerate_cycle_pcw(&h, 14).unwrap();
        let listed: Vec<ExponentVector> = dumbbell_reciprocal().terms().map(|(e, _)| e.clone()).collect();
        for e in &listed {
            assert!(pcws.contains(e), "{e:?}");
        }
        for e in &pcws {
            let p: Vec<i64> = e.as_slice().iter().map(|&x| x as i64).collect();
            assert!(is_unscaled_pcw(&h, &p).unwrap(), "{e:?}");
        }
        assert_eq!(enumerate_cycle_pcw(&h, 0).unwrap(), vec![ExponentVector::zeros(7)]);
        assert!(enumerate_cycle_pcw(&small_general_code(), 4).is_err());
    }

    #[test]
    fn capacity_is_enforced() {
        let g = MultiGraph::new(2, vec![(0, 1); 13]).unwrap();
        assert!(matches!(zeta_reciprocal(&g), Err(Error::Capacity { bound: 24, found: 26, .. })));
    }

    #[test]
    fn bit_even_matches_cycle_pipeline_on_triangle() {
        let h = triangle_code();
        let opts = ZetaOptions { max_directed_edges: 12, ..ZetaOptions::default() };
        assert_eq!(bit_even_pcw_with(&h, 12, opts).unwrap(), enumerate_cycle_pcw(&h, 6).unwrap());
        assert_eq!(bit_even_pcw(&h, 0).unwrap(), vec![ExponentVector::zeros(3)]);
    }

    #[test]
    fn bit_even_general_code() {
        let h0 = small_general_code();
        let h = duplicate_checks(&h0);
        assert!(matches!(bit_even_pcw(&h0, 4), Err(Error::NotBitEven { .. })));
        let opts = ZetaOptions { max_directed_edges: 28, ..ZetaOptions::default() };
        let pcws = bit_even_pcw_with(&h, 28, opts).unwrap();
        assert!(pcws.len() > 1);
        for e in pcws {
            let p: Vec<i64> = e.as_slice().iter().map(|&x| x as i64).collect();
            assert!(is_unscaled_pcw(&h0, &p).unwrap(), "{e:?}");
        }
        let isolated = BinaryMatrix::from_rows(&[[1u8, 1, 0], [1, 1, 0]]).unwrap();
        assert!(matches!(bit_even_pcw(&isolated, 4), Err(Error::IsolatedBit { bit: 2 })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn multigraph() -> impl Strategy<Value = MultiGraph> {
            (2usize..6).prop_flat_map(|v| {
                proptest::collection::vec((0..v, 0..v), 1..7).prop_map(move |pairs| {
                    let edges: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
                    MultiGraph::new(v, edges).unwrap()
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn orientation_does_not_matter(g in multigraph(), flips in proptest::collection::vec(any::<bool>(), 7)) {
                let flips = &flips[..g.num_edges()];
                let opts = ZetaOptions { verify: true, ..ZetaOptions::default() };
                prop_assert_eq!(
                    reciprocal_of_matrix(&DirectedEdgeMatrix::new(&g), opts).unwrap(),
                    reciprocal_of_matrix(&DirectedEdgeMatrix::with_orientation(&g, flips), opts).unwrap()
                );
            }

            #[test]
            fn matrix_row_sums(g in multigraph()) {
                let dem = DirectedEdgeMatrix::new(&g);
                for a in 0..dem.size() {
                    let (_, head) = g.directed_endpoints(a);
                    prop_assert_eq!(dem.row_sum(a), g.degree(head) - 1);
                }
            }
        }
    }
}
