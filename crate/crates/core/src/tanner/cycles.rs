//! Cycle enumeration on small multigraphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::multigraph::{EdgeWalk, MultiGraph};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

pub const DEFAULT_MAX_CYCLE_EDGES: usize = 20;
pub const DEFAULT_MAX_WALK_EDGES: usize = 16;

/// Characteristic vectors of all simple cycles of `g`, sorted.
pub fn simple_cycle_characteristic_vectors(g: &MultiGraph, max_edges: usize) -> Result<Vec<BitVector>> {
    if g.num_edges() > max_edges {
        return Err(Error::Capacity {
            what: "edge count for simple-cycle enumeration",
            bound: max_edges,
            found: g.num_edges(),
        });
    }
    let mut found = BTreeSet::new();
    let mut on_path = vec![false; g.num_vertices()];
    let mut path = Vec::new();
    for start in 0..g.num_vertices() {
        on_path[start] = true;
        extend_simple(g, start, start, &mut on_path, &mut path, &mut found);
        on_path[start] = false;
    }
    Ok(found.into_iter().collect())
}

// Each cycle is rooted at its least vertex and found once per direction;
// the set keeps one copy.
fn extend_simple(
    g: &MultiGraph,
    root: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    found: &mut BTreeSet<BitVector>,
) {
    for &e in g.incident_edges(at) {
        if path.last() == Some(&e) {
            continue;
        }
        let w = g.other_end(e, at);
        if w == root {
            let mut v = BitVector::zeros(g.num_edges());
            for &p in path.iter() {
                v.set(p, true);
            }
            v.set(e, true);
            found.insert(v);
        } else if w > root && !on_path[w] {
            on_path[w] = true;
            path.push(e);
            extend_simple(g, root, w, on_path, path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

/// One representative per equivalence class of primitive backtrackless
/// tailless cycles of length at most `max_len`.
///
/// Classes are directed: a cycle and its reversal are different classes
/// unless they coincide up to rotation. The representative starts at the
/// directed edge that makes its directed-edge sequence the least rotation.
pub fn primitive_cycle_classes(g: &MultiGraph, max_len: usize) -> Result<Vec<EdgeWalk>> {
    Ok(directed_lyndon_cycles(g, max_len)?
        .into_iter()
        .map(|seq| EdgeWalk::cycle(seq.into_iter().map(|d| d % g.num_edges()).collect()))
        .collect())
}

fn directed_lyndon_cycles(g: &MultiGraph, max_len: usize) -> Result<Vec<Vec<usize>>> {
    if max_len > DEFAULT_MAX_WALK_EDGES {
        return Err(Error::Capacity {
            what: "walk length bound",
            bound: DEFAULT_MAX_WALK_EDGES,
            found: max_len,
        });
    }
    let succ: Vec<Vec<usize>> = (0..g.num_directed_edges())
        .map(|d| g.nonbacktracking_successors(d))
        .collect();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(max_len);
    for first in 0..succ.len() {
        seq.clear();
        seq.push(first);
        grow_lyndon(&succ, first, max_len, &mut seq, &mut out);
    }
    Ok(out)
}

fn grow_lyndon(succ: &[Vec<usize>], first: usize, max_len: usize, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let last = *seq.last().expect("sequence starts non-empty");
    if seq.len() > max_len {
        return;
    }
    if succ[last].contains(&first) && is_lyndon(seq) {
        out.push(seq.clone());
    }
    if seq.len() == max_len {
        return;
    }
    for &next in &succ[last] {
        // A Lyndon word starts with its least letter.
        if next < first {
            continue;
        }
        seq.push(next);
        grow_lyndon(succ, first, max_len, seq, out);
        seq.pop();
    }
}

/// Strictly less than every proper rotation: canonical and aperiodic.
fn is_lyndon(seq: &[usize]) -> bool {
    let k = seq.len();
    (1..k).all(|t| {
        let rotated = seq[t..].iter().chain(&seq[..t]);
        seq.iter().lt(rotated)
    })
}

/// An edge-usage vector together with the number of multisets of primitive
/// cycle classes realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WalkUnion {
    pub usage: Vec<u32>,
    pub multiplicity: u64,
}

/// Edge-usage vectors of unions of backtrackless tailless closed walks with
/// at most `max_total_edges` edges in total.
///
/// The multiplicity of a usage vector counts multisets of primitive cycle
/// classes, which is the coefficient the edge zeta function assigns to the
/// matching monomial. The empty union (usage zero) is always present.
/// Output is sorted by total usage, then lexicographically.
pub fn backtrackless_tailless_closed_walks(g: &MultiGraph, max_total_edges: usize) -> Result<Vec<WalkUnion>> {
    let m = g.num_edges();
    let classes = primitive_cycle_classes(g, max_total_edges)?;
    // Classes with equal usage are interchangeable: c of them contribute
    // C(c + k - 1, k) multisets of size k.
    let mut by_usage: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for class in &classes {
        *by_usage.entry(class.usage(m)).or_insert(0) += 1;
    }
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    counts.insert(vec![0; m], 1);
    for (usage, c) in &by_usage {
        let len: usize = usage.iter().map(|&x| x as usize).sum();
        let snapshot: Vec<(Vec<u32>, u64)> = counts.iter().map(|(k, v)| (k.clone(), *v)).collect();
        for (base, count) in snapshot {
            let base_len: usize = base.iter().map(|&x| x as usize).sum();
            let mut acc = base;
            let mut total = base_len + len;
            let mut multisets = 1u64;
            let mut k = 0u64;
            while total <= max_total_edges {
                k += 1;
                multisets = multisets * (c + k - 1) / k;
                for (a, u) in acc.iter_mut().zip(usage) {
                    *a += u;
                }
                *counts.entry(acc.clone()).or_insert(0) += count * multisets;
                total += len;
            }
        }
    }
    let mut out: Vec<WalkUnion> = counts
        .into_iter()
        .map(|(usage, multiplicity)| WalkUnion { usage, multiplicity })
        .collect();
    out.sort_by(|a, b| {
        let ta: u32 = a.usage.iter().sum();
        let tb: u32 = b.usage.iter().sum();
        ta.cmp(&tb).then_with(|| a.usage.cmp(&b.usage))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{enumerate_codewords, span};
    use crate::tanner::TannerGraph;
    use crate::fixtures::{dumbbell, triangle_graph};

    fn dumbbell_graph() -> MultiGraph {
        TannerGraph::from_parity_matrix(&dumbbell()).normal_graph().unwrap()
    }

    #[test]
    fn dumbbell_simple_cycles() {
        let v = simple_cycle_characteristic_vectors(&dumbbell_graph(), 20).unwrap();
        let expected: Vec<BitVector> = ["0000111", "1110000"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(v, expected);
        assert_eq!(
            span(&v, 7, 24).unwrap(),
            enumerate_codewords(&dumbbell(), 24).unwrap()
        );
    }

    #[test]
    fn trees_have_no_cycles() {
        let g = MultiGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(simple_cycle_characteristic_vectors(&g, 20).unwrap().is_empty());
    }

    #[test]
    fn parallel_edges_form_two_cycles() {
        let g = MultiGraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let v = simple_cycle_characteristic_vectors(&g, 20).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|c| c.weight() == 2));
    }

    #[test]
    fn simple_cycle_bound() {
        let g = MultiGraph::new(2, vec![(0, 1); 5]).unwrap();
        assert!(matches!(
            simple_cycle_characteristic_vectors(&g, 4),
            Err(Error::Capacity { bound: 4, found: 5, .. })
        ));
    }

    #[test]
    fn lyndon_check() {
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(is_lyndon(&[3]));
    }

    #[test]
    fn triangle_walk_unions() {
        let u = backtrackless_tailless_closed_walks(&triangle_graph(), 6).unwrap();
        let usages: Vec<_> = u.iter().map(|w| w.usage.clone()).collect();
        assert_eq!(usages, vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
        let mults: Vec<_> = u.iter().map(|w| w.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn zero_bound_gives_empty_union() {
        let u = backtrackless_tailless_closed_walks(&dumbbell_graph(), 0).unwrap();
        assert_eq!(u, vec![WalkUnion { usage: vec![0; 7], multiplicity: 1 }]);
    }

    #[test]
    fn dumbbell_figure_eight_walk() {
        let u = backtrackless_tailless_closed_walks(&dumbbell_graph(), 8).unwrap();
        let hit = u.iter().find(|w| w.usage == vec![1, 1, 1, 2, 1, 1, 1]).unwrap();
        assert_eq!(hit.multiplicity, 4);
    }

    #[test]
    fn classes_are_backtrackless_and_tailless() {
        let g = dumbbell_graph();
        for w in primitive_cycle_classes(&g, 12).unwrap() {
            assert!(w.is_backtrackless(), "{w:?}");
            assert!(w.is_tailless(), "{w:?}");
            assert!(w.vertex_sequence(&g).is_some(), "{w:?}");
        }
    }

    #[test]
    fn walk_bound_is_enforced() {
        assert!(primitive_cycle_classes(&triangle_graph(), 17).is_err());
    }
}
