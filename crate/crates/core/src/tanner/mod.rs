//! Tanner graphs of parity-check matrices and the graphs derived from them.
//!
//! Bit nodes are indexed `0..n` (columns of `H`), check nodes `0..r` (rows).
//! Tanner edges are the pairs `(bit, check)` with `h[check][bit] = 1`, kept
//! sorted by bit then check. That ordering groups the edges at each bit node
//! into consecutive blocks, which the bit-even zeta pipeline relies on.

mod cycles;
mod euler;
mod multigraph;

pub use cycles::{
    backtrackless_tailless_closed_walks, primitive_cycle_classes, simple_cycle_characteristic_vectors,
    WalkUnion, DEFAULT_MAX_CYCLE_EDGES, DEFAULT_MAX_WALK_EDGES,
};
pub use euler::euler_cycle_decomposition;
pub use multigraph::{EdgeWalk, MultiGraph, WalkKind};

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    num_bits: usize,
    num_checks: usize,
    edges: Vec<(usize, usize)>,
    bit_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_parity_matrix(h: &BinaryMatrix) -> Self {
        let (r, n) = (h.num_rows(), h.num_cols());
        let mut edges = Vec::with_capacity(h.num_ones());
        let mut bit_adj = vec![Vec::new(); n];
        let mut check_adj = vec![Vec::new(); r];
        for (bit, checks) in bit_adj.iter_mut().enumerate() {
            for (check, bits) in check_adj.iter_mut().enumerate() {
                if h.get(check, bit) {
                    edges.push((bit, check));
                    checks.push(check);
                    bits.push(bit);
                }
            }
        }
        Self {
            num_bits: n,
            num_checks: r,
            edges,
            bit_adj,
            check_adj,
        }
    }

    pub fn to_parity_matrix(&self) -> BinaryMatrix {
        let mut h = BinaryMatrix::zeros(self.num_checks, self.num_bits);
        for &(bit, check) in &self.edges {
            h.set(check, bit, true);
        }
        h
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    /// Edges as `(bit, check)`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, bit: usize, check: usize) -> Option<usize> {
        self.edges.binary_search(&(bit, check)).ok()
    }

    /// Check neighbours of a bit, ascending.
    pub fn bit_neighbors(&self, bit: usize) -> &[usize] {
        &self.bit_adj[bit]
    }

    /// Bit neighbours of a check, ascending.
    pub fn check_neighbors(&self, check: usize) -> &[usize] {
        &self.check_adj[check]
    }

    pub fn bit_degree(&self, bit: usize) -> usize {
        self.bit_adj[bit].len()
    }

    pub fn check_degree(&self, check: usize) -> usize {
        self.check_adj[check].len()
    }

    pub fn bit_degrees(&self) -> Vec<usize> {
        self.bit_adj.iter().map(Vec::len).collect()
    }

    pub fn check_degrees(&self) -> Vec<usize> {
        self.check_adj.iter().map(Vec::len).collect()
    }

    pub fn is_bit_even(&self) -> bool {
        self.bit_adj.iter().all(|a| a.len() % 2 == 0)
    }

    pub fn is_cycle_code(&self) -> bool {
        self.bit_adj.iter().all(|a| a.len() == 2)
    }

    /// The Tanner graph as a plain graph: vertices `0..n` are the bits,
    /// `n..n+r` the checks, edge `t` is Tanner edge `t`.
    pub fn as_multigraph(&self) -> MultiGraph {
        let n = self.num_bits;
        let edges = self.edges.iter().map(|&(b, c)| (b, n + c)).collect();
        MultiGraph::new(n + self.num_checks, edges).expect("Tanner graphs have no loops")
    }

    /// The normal graph of a cycle code: one vertex per check, edge `i`
    /// joining the two checks adjacent to bit `i`.
    pub fn normal_graph(&self) -> Result<MultiGraph> {
        let mut edges = Vec::with_capacity(self.num_bits);
        for (bit, checks) in self.bit_adj.iter().enumerate() {
            match checks.as_slice() {
                &[a, b] => edges.push((a, b)),
                other => {
                    return Err(Error::NotCycleCode {
                        bit,
                        degree: other.len(),
                    })
                }
            }
        }
        MultiGraph::new(self.num_checks, edges)
    }
}

pub fn is_bit_even(t: &TannerGraph) -> bool {
    t.is_bit_even()
}

pub fn normal_graph(t: &TannerGraph) -> Result<MultiGraph> {
    t.normal_graph()
}

/// Repeats every row of `h` twice in place. The result has the same null
/// space and fundamental cone, and its Tanner graph is bit-even.
pub fn duplicate_checks(h: &BinaryMatrix) -> BinaryMatrix {
    let rows = h
        .rows()
        .iter()
        .flat_map(|r| [r.clone(), r.clone()])
        .collect();
    BinaryMatrix::from_bit_rows(h.num_cols(), rows).expect("rows share the column count")
}
