use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;

/// An undirected graph with indexed, possibly parallel edges and no loops.
///
/// Directed edges are numbered `0..2m`: slot `i < m` is edge `i` oriented
/// from its lower to its higher endpoint, slot `m + i` is its reverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

impl MultiGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut incident = vec![Vec::new(); num_vertices];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= num_vertices || v >= num_vertices {
                return Err(Error::InvalidArgument(format!(
                    "edge {idx} = ({u}, {v}) names a vertex outside 0..{num_vertices}"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("edge {idx} is a loop at vertex {u}")));
            }
            incident[u].push(idx);
            incident[v].push(idx);
        }
        Ok(Self {
            num_vertices,
            edges,
            incident,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge indices incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incident.iter().map(Vec::len).collect()
    }

    /// The endpoint of `edge` that is not `v`.
    pub fn other_end(&self, edge: usize, v: usize) -> usize {
        let (a, b) = self.edges[edge];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Vertex-by-edge incidence matrix. Its Tanner graph has every bit of
    /// degree 2 and its cycle code is the cycle space of this graph.
    pub fn incidence_matrix(&self) -> BinaryMatrix {
        let mut h = BinaryMatrix::zeros(self.num_vertices, self.edges.len());
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            h.set(u, idx, true);
            h.set(v, idx, true);
        }
        h
    }

    pub fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn num_directed_edges(&self) -> usize {
        2 * self.edges.len()
    }

    /// `(tail, head)` of directed edge `d`.
    pub fn directed_endpoints(&self, d: usize) -> (usize, usize) {
        let m = self.edges.len();
        let (a, b) = self.edges[d % m];
        let (lo, hi) = (a.min(b), a.max(b));
        if d < m {
            (lo, hi)
        } else {
            (hi, lo)
        }
    }

    pub fn reverse_of(&self, d: usize) -> usize {
        let m = self.edges.len();
        if d < m {
            d + m
        } else {
            d - m
        }
    }

    /// Directed edges that `d` feeds into without backtracking, ascending.
    pub fn nonbacktracking_successors(&self, d: usize) -> Vec<usize> {
        let m = self.edges.len();
        let (_, head) = self.directed_endpoints(d);
        let mut out: Vec<usize> = self.incident[head]
            .iter()
            .filter(|&&e| e != d % m)
            .map(|&e| {
                let (lo, _) = self.directed_endpoints(e);
                if lo == head {
                    e
                } else {
                    e + m
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Path,
    Cycle,
}

/// A walk recorded by edge indices only.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeWalk {
    pub edges: Vec<usize>,
    pub kind: WalkKind,
}

impl EdgeWalk {
    pub fn path(edges: Vec<usize>) -> Self {
        Self {
            edges,
            kind: WalkKind::Path,
        }
    }

    pub fn cycle(edges: Vec<usize>) -> Self {
        Self {
            edges,
            kind: WalkKind::Cycle,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// No edge is immediately repeated.
    pub fn is_backtrackless(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// First and last edges differ. Paths are never tailed.
    pub fn is_tailless(&self) -> bool {
        match self.kind {
            WalkKind::Path => true,
            WalkKind::Cycle => self.edges.first() != self.edges.last() || self.edges.is_empty(),
        }
    }

    pub fn is_edge_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges.iter().all(|e| seen.insert(*e))
    }

    /// Vertex sequence visited by the walk on `g`, if the edges can be
    /// oriented head to tail (and, for cycles, close up).
    pub fn vertex_sequence(&self, g: &MultiGraph) -> Option<Vec<usize>> {
        let first = *self.edges.first()?;
        if self.edges.iter().any(|&e| e >= g.num_edges()) {
            return None;
        }
        let (a, b) = g.edges()[first];
        'start: for start in [a, b] {
            let mut seq = vec![start];
            let mut at = start;
            for &e in &self.edges {
                let (u, v) = g.edges()[e];
                at = if u == at {
                    v
                } else if v == at {
                    u
                } else {
                    continue 'start;
                };
                seq.push(at);
            }
            if self.kind == WalkKind::Cycle && at != start {
                continue;
            }
            return Some(seq);
        }
        None
    }

    /// Number of times each edge of an `m`-edge graph is used.
    pub fn usage(&self, m: usize) -> Vec<u32> {
        let mut u = vec![0; m];
        for &e in &self.edges {
            u[e] += 1;
        }
        u
    }
}
