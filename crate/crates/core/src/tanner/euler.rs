use super::multigraph::EdgeWalk;
use super::TannerGraph;
use crate::error::{Error, Result};
use crate::gf2::{syndrome, BitVector};

/// Splits the subgraph of `t` spanned by the bits in the support of `c` into
/// edge-disjoint closed trails, one Euler circuit per connected component.
///
/// Requires `t` bit-even and `c` a codeword, which together make every
/// vertex of the subgraph even. Walks use Tanner edge indices and start at
/// the lowest bit of their component.
pub fn euler_cycle_decomposition(t: &TannerGraph, c: &BitVector) -> Result<Vec<EdgeWalk>> {
    if let Some(bit) = (0..t.num_bits()).find(|&b| t.bit_degree(b) % 2 == 1) {
        return Err(Error::NotBitEven {
            bit,
            degree: t.bit_degree(bit),
        });
    }
    let s = syndrome(&t.to_parity_matrix(), c)?;
    if !s.is_zero() {
        return Err(Error::NotACodeword {
            syndrome_weight: s.weight(),
        });
    }

    let n = t.num_bits();
    let g = t.as_multigraph();
    let active: Vec<bool> = t.edges().iter().map(|&(bit, _)| c.get(bit)).collect();
    let mut used = vec![false; t.num_edges()];
    // Per-vertex cursor into its (ascending) incident edge list.
    let mut cursor = vec![0usize; g.num_vertices()];
    let mut walks = Vec::new();

    for start in (0..n).filter(|&b| c.get(b) && t.bit_degree(b) > 0) {
        if g.incident_edges(start).iter().all(|&e| used[e]) {
            continue;
        }
        let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
        let mut circuit = Vec::new();
        while let Some(&(v, via)) = stack.last() {
            let inc = g.incident_edges(v);
            while cursor[v] < inc.len() && (used[inc[cursor[v]]] || !active[inc[cursor[v]]]) {
                cursor[v] += 1;
            }
            if cursor[v] < inc.len() {
                let e = inc[cursor[v]];
                used[e] = true;
                stack.push((g.other_end(e, v), Some(e)));
            } else {
                stack.pop();
                if let Some(e) = via {
                    circuit.push(e);
                }
            }
        }
        circuit.reverse();
        walks.push(EdgeWalk::cycle(circuit));
    }
    Ok(walks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{BinaryMatrix, enumerate_codewords};
    use crate::tanner::duplicate_checks;
    use crate::fixtures::dumbbell;
    use std::collections::HashSet;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn assert_valid(t: &TannerGraph, c: &BitVector, walks: &[EdgeWalk]) {
        let g = t.as_multigraph();
        let mut seen = HashSet::new();
        for w in walks {
            assert!(w.is_edge_simple());
            assert!(w.vertex_sequence(&g).is_some(), "not closed: {w:?}");
            for &e in &w.edges {
                assert!(seen.insert(e), "edge {e} used twice");
            }
        }
        let expected: HashSet<usize> = (0..t.num_edges()).filter(|&e| c.get(t.edges()[e].0)).collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn single_hexagon() {
        let t = TannerGraph::from_parity_matrix(&dumbbell());
        let c = bv("1110000");
        let walks = euler_cycle_decomposition(&t, &c).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].len(), 6);
        assert_valid(&t, &c, &walks);
        let seq = walks[0].vertex_sequence(&t.as_multigraph()).unwrap();
        assert_eq!(seq[0], 0);
    }

    #[test]
    fn two_hexagons() {
        let t = TannerGraph::from_parity_matrix(&dumbbell());
        let c = bv("1110111");
        let walks = euler_cycle_decomposition(&t, &c).unwrap();
        assert_eq!(walks.len(), 2);
        assert!(walks.iter().all(|w| w.len() == 6));
        assert_valid(&t, &c, &walks);
    }

    #[test]
    fn zero_word_and_errors() {
        let t = TannerGraph::from_parity_matrix(&dumbbell());
        assert!(euler_cycle_decomposition(&t, &BitVector::zeros(7)).unwrap().is_empty());
        assert!(matches!(
            euler_cycle_decomposition(&t, &bv("1000000")),
            Err(Error::NotACodeword { .. })
        ));
        let odd = TannerGraph::from_parity_matrix(&BinaryMatrix::from_rows(&[[1u8, 1]]).unwrap());
        assert!(matches!(
            euler_cycle_decomposition(&odd, &bv("11")),
            Err(Error::NotBitEven { bit: 0, degree: 1 })
        ));
    }

    #[test]
    fn degree_four_bits() {
        let h0 = BinaryMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [1, 1, 1]]).unwrap();
        let h = duplicate_checks(&h0);
        let t = TannerGraph::from_parity_matrix(&h);
        for c in enumerate_codewords(&h, 24).unwrap() {
            let walks = euler_cycle_decomposition(&t, &c).unwrap();
            assert_valid(&t, &c, &walks);
        }
    }
}
