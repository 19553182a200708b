//! Realizing integer cone points as codewords of finite covers.
//!
//! Given `p` with `N_f = sum_{x in f} p_x` even at every check and
//! `N_f - p_x >= p_x` for every adjacent pair, [`realize`] builds an
//! `M`-cover with `M = max(p_x, N_f / 2, 1)`, a codeword on it whose block
//! `i` has ones exactly at fibers `0..p_i`, and the family of edge-disjoint
//! backtrackless paths the cover was assembled from.
//!
//! The paths are grown greedily. Every bit fiber `x_k` (`k < p_x`) keeps a
//! list of the checks it still has to be joined to and every check `f` a
//! list of the bit fibers still waiting for it. A path starts at the bit
//! fiber with the longest list, and alternates
//!
//! * to the check in the current bit fiber's list with the longest list,
//!   using that check's next unused fiber, and
//! * to a bit fiber of a different bit in that check's list, preferring the
//!   bit with the most fibers left in the list, then the fiber with the
//!   longest list,
//!
//! stopping once the bit fiber it reached has an empty list. Ties go to the
//! lowest index. Each check fiber is used by one visit, so it is joined to
//! exactly two lit bit fibers; the remaining fibers are paired up in index
//! order and carry zeros.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::covers::{CoverSpec, CoverWord, Permutation};
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::tanner::TannerGraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HypothesisFailure {
    /// The multiplicities around a check have odd sum.
    OddCheckSum { check: usize, sum: u64 },
    /// One bit outweighs the rest of a check's neighbourhood.
    Unbalanced { check: usize, bit: usize, others: u64, own: u64 },
}

impl fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HypothesisFailure::OddCheckSum { check, sum } => {
                write!(f, "parity: multiplicities at check {} sum to {sum}, which is odd", check + 1)
            }
            HypothesisFailure::Unbalanced { check, bit, others, own } => write!(
                f,
                "balance: at check {}, bit {} has {own} but the other neighbours only {others}",
                check + 1,
                bit + 1
            ),
        }
    }
}

impl Serialize for HypothesisFailure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            HypothesisFailure::OddCheckSum { check, sum } => {
                let mut st = s.serialize_struct("HypothesisFailure", 3)?;
                st.serialize_field("kind", "odd-check-sum")?;
                st.serialize_field("check", &(check + 1))?;
                st.serialize_field("sum", &sum)?;
                st.end()
            }
            HypothesisFailure::Unbalanced { check, bit, others, own } => {
                let mut st = s.serialize_struct("HypothesisFailure", 5)?;
                st.serialize_field("kind", "unbalanced")?;
                st.serialize_field("check", &(check + 1))?;
                st.serialize_field("bit", &(bit + 1))?;
                st.serialize_field("others", &others)?;
                st.serialize_field("own", &own)?;
                st.end()
            }
        }
    }
}

fn validate_multiplicities(t: &TannerGraph, p: &[i64]) -> Result<Vec<u64>> {
    if p.len() != t.num_bits() {
        return Err(Error::DimensionMismatch {
            what: "multiplicity vector length",
            expected: t.num_bits(),
            found: p.len(),
        });
    }
    p.iter()
        .enumerate()
        .map(|(index, &x)| {
            u64::try_from(x).map_err(|_| Error::NegativeEntry {
                index,
                value: x.to_string(),
            })
        })
        .collect()
}

/// Every failing parity and balance condition, in check order.
pub fn check_hypotheses(t: &TannerGraph, p: &[i64]) -> Result<Vec<HypothesisFailure>> {
    let p = validate_multiplicities(t, p)?;
    let mut out = Vec::new();
    for check in 0..t.num_checks() {
        let sum: u64 = t.check_neighbors(check).iter().map(|&x| p[x]).sum();
        if sum % 2 == 1 {
            out.push(HypothesisFailure::OddCheckSum { check, sum });
        }
        for &bit in t.check_neighbors(check) {
            let own = p[bit];
            let others = sum - own;
            if others < own {
                out.push(HypothesisFailure::Unbalanced { check, bit, others, own });
            }
        }
    }
    Ok(out)
}

/// One lifted edge, 0-based: bit fiber `(i, k)` to check fiber `(j, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberEdge {
    pub bit: (usize, usize),
    pub check: (usize, usize),
}

impl Serialize for FiberEdge {
    /// `{"bit": [i, k], "check": [j, l]}`, 1-based.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiberEdge", 2)?;
        st.serialize_field("bit", &[self.bit.0 + 1, self.bit.1 + 1])?;
        st.serialize_field("check", &[self.check.0 + 1, self.check.1 + 1])?;
        st.end()
    }
}

/// A path on a cover, as its edges in order. It starts at the bit fiber of
/// its first edge; edges `2t` and `2t+1` pass through a check fiber and
/// edges `2t+1` and `2t+2` through a bit fiber.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FiberPath(pub Vec<FiberEdge>);

impl FiberPath {
    pub fn edges(&self) -> &[FiberEdge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn start(&self) -> Option<(usize, usize)> {
        self.0.first().map(|e| e.bit)
    }

    pub fn end(&self) -> Option<(usize, usize)> {
        self.0.len().is_multiple_of(2).then(|| self.0.last().map(|e| e.bit)).flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub cover: CoverSpec,
    pub word: CoverWord,
    pub paths: Vec<FiberPath>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Re-check the balance invariant after every step and fail with a dump
    /// of the working lists if it breaks.
    pub check_invariants: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self {
            check_invariants: cfg!(debug_assertions),
        }
    }
}

pub fn realize(h: &BinaryMatrix, p: &[i64]) -> Result<Realization> {
    realize_with(h, p, RealizeOptions::default())
}

pub fn realize_with(h: &BinaryMatrix, p: &[i64], options: RealizeOptions) -> Result<Realization> {
    let t = TannerGraph::from_parity_matrix(h);
    let failures = check_hypotheses(&t, p)?;
    if !failures.is_empty() {
        return Err(Error::HypothesesFailed(failures));
    }
    let p = validate_multiplicities(&t, p)?;
    let p: Vec<usize> = p.into_iter().map(|x| x as usize).collect();

    let half_sums = (0..t.num_checks()).map(|f| t.check_neighbors(f).iter().map(|&x| p[x]).sum::<usize>() / 2);
    let m = p.iter().copied().chain(half_sums).chain([1]).max().unwrap_or(1);

    let mut state = WorkState::new(&t, &p);
    if options.check_invariants {
        state.check_balance()?;
    }
    let mut paths = Vec::new();
    while let Some(start) = state.heaviest_bit_fiber() {
        paths.push(state.grow_path(start, options)?);
    }

    let cover = complete_cover(&t, &p, m, &state.joined)?;
    let mut word = CoverWord::zeros(t.num_bits(), m);
    for (i, &pi) in p.iter().enumerate() {
        for k in 0..pi {
            word.set(i, k, true);
        }
    }
    Ok(Realization { cover, word, paths })
}

/// The lists the path builder works from.
#[derive(Debug)]
struct WorkState<'a> {
    t: &'a TannerGraph,
    /// `bit_lists[x][k]`: checks bit fiber `x_k` still has to be joined to.
    bit_lists: Vec<Vec<BTreeSet<usize>>>,
    /// `check_lists[f]`: bit fibers still waiting for check `f`.
    check_lists: Vec<BTreeSet<(usize, usize)>>,
    /// `counts[f][x]`: fibers of `x` in `check_lists[f]`.
    counts: Vec<BTreeMap<usize, usize>>,
    /// Visits so far per check.
    uses: Vec<usize>,
    /// Per base edge, the pairs (bit fiber, check fiber) joined so far.
    joined: Vec<Vec<(usize, usize)>>,
}

impl<'a> WorkState<'a> {
    fn new(t: &'a TannerGraph, p: &[usize]) -> Self {
        let bit_lists = (0..t.num_bits())
            .map(|x| vec![t.bit_neighbors(x).iter().copied().collect(); p[x]])
            .collect();
        let check_lists = (0..t.num_checks())
            .map(|f| {
                t.check_neighbors(f)
                    .iter()
                    .flat_map(|&x| (0..p[x]).map(move |k| (x, k)))
                    .collect()
            })
            .collect();
        let counts = (0..t.num_checks())
            .map(|f| t.check_neighbors(f).iter().map(|&x| (x, p[x])).collect())
            .collect();
        Self {
            t,
            bit_lists,
            check_lists,
            counts,
            uses: vec![0; t.num_checks()],
            joined: vec![Vec::new(); t.num_edges()],
        }
    }

    fn heaviest_bit_fiber(&self) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), usize)> = None;
        for (x, fibers) in self.bit_lists.iter().enumerate() {
            for (k, list) in fibers.iter().enumerate() {
                if !list.is_empty() && best.is_none_or(|(_, w)| list.len() > w) {
                    best = Some(((x, k), list.len()));
                }
            }
        }
        best.map(|(v, _)| v)
    }

    fn join(&mut self, (x, k): (usize, usize), f: usize, s: usize) -> FiberEdge {
        self.bit_lists[x][k].remove(&f);
        self.check_lists[f].remove(&(x, k));
        *self.counts[f].get_mut(&x).expect("adjacent") -= 1;
        let t = self.t.edge_index(x, f).expect("adjacent");
        self.joined[t].push((k, s));
        FiberEdge {
            bit: (x, k),
            check: (f, s),
        }
    }

    fn grow_path(&mut self, start: (usize, usize), options: RealizeOptions) -> Result<FiberPath> {
        let mut path = Vec::new();
        let mut at = start;
        loop {
            // Heaviest check still listed at the current bit fiber.
            let f = *self.bit_lists[at.0][at.1]
                .iter()
                .max_by(|a, b| self.check_lists[**a].len().cmp(&self.check_lists[**b].len()).then(b.cmp(a)))
                .expect("path only continues from fibers with a nonempty list");
            let s = self.uses[f];
            self.uses[f] += 1;
            path.push(self.join(at, f, s));

            let next = self.check_lists[f]
                .iter()
                .filter(|&&(y, _)| y != at.0)
                .max_by(|&&a, &&b| {
                    let key = |(y, l): (usize, usize)| (self.counts[f][&y], self.bit_lists[y][l].len());
                    key(a).cmp(&key(b)).then(b.cmp(&a))
                })
                .copied();
            let Some(next) = next else {
                return Err(Error::InvariantBreach(format!(
                    "check {f} has no fiber of another bit left after arriving from {at:?}\n{}",
                    self.dump()
                )));
            };
            path.push(self.join(next, f, s));
            if options.check_invariants {
                self.check_balance()?;
            }
            at = next;
            if self.bit_lists[at.0][at.1].is_empty() {
                return Ok(FiberPath(path));
            }
        }
    }

    /// No bit holds more than half of the fibers left in any check list.
    fn check_balance(&self) -> Result<()> {
        for (f, counts) in self.counts.iter().enumerate() {
            let total: usize = counts.values().sum();
            if let Some((&w, &c)) = counts.iter().find(|(_, &c)| total - c < c) {
                return Err(Error::InvariantBreach(format!(
                    "check {f}: bit {w} holds {c} of {total} listed fibers\n{}",
                    self.dump()
                )));
            }
        }
        Ok(())
    }

    fn dump(&self) -> String {
        let mut s = String::new();
        for (x, fibers) in self.bit_lists.iter().enumerate() {
            for (k, list) in fibers.iter().enumerate() {
                s += &format!("L(x{x}_{k}) = {list:?}\n");
            }
        }
        for (f, list) in self.check_lists.iter().enumerate() {
            s += &format!("L(f{f}) = {list:?}, counts {:?}, uses {}\n", self.counts[f], self.uses[f]);
        }
        s
    }
}

/// Turns the joined pairs into one permutation per base edge. Bit fibers
/// `0..p_x` are already matched; the rest are matched to the unused check
/// fibers in increasing order.
fn complete_cover(t: &TannerGraph, p: &[usize], m: usize, joined: &[Vec<(usize, usize)>]) -> Result<CoverSpec> {
    let mut perms = Vec::with_capacity(t.num_edges());
    for (e, &(x, f)) in t.edges().iter().enumerate() {
        let mut images = vec![usize::MAX; m];
        let mut bit_used = vec![false; m];
        for &(k, s) in &joined[e] {
            if images[s] != usize::MAX || bit_used[k] {
                return Err(Error::InvariantBreach(format!(
                    "edge (bit {x}, check {f}) joined twice at fiber pair ({k}, {s})"
                )));
            }
            images[s] = k;
            bit_used[k] = true;
        }
        if joined[e].len() != p[x] || bit_used[..p[x]].iter().any(|u| !u) {
            return Err(Error::InvariantBreach(format!(
                "edge (bit {x}, check {f}) lifted {} times, expected {}",
                joined[e].len(),
                p[x]
            )));
        }
        let mut spare_bits = (0..m).filter(|&k| !bit_used[k]);
        for image in images.iter_mut().filter(|i| **i == usize::MAX) {
            *image = spare_bits.next().expect("as many spare bit fibers as check fibers");
        }
        perms.push(Permutation::from_images(images)?);
    }
    CoverSpec::new(t.clone(), m, perms)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Diagnostic {
    WrongLength { expected: usize, found: usize },
    EmptyPath { path: usize },
    MissingEdge { path: usize, position: usize, edge: FiberEdge },
    Backtrack { path: usize, position: usize },
    BrokenChain { path: usize, position: usize },
    EndsAtCheck { path: usize },
    CheckFiberRepeated { check: (usize, usize) },
    EdgeRepeated { edge: FiberEdge },
    PartialBitFiber { bit: (usize, usize), used: usize, degree: usize },
    WrongEdgeMultiplicity { bit: usize, check: usize, lifted: usize, expected: u64 },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Diagnostic::*;
        match self {
            WrongLength { expected, found } => write!(f, "multiplicity vector has length {found}, expected {expected}"),
            EmptyPath { path } => write!(f, "path {path} is empty"),
            MissingEdge { path, position, edge } => {
                write!(f, "path {path}, edge {position}: {edge:?} is not an edge of the cover")
            }
            Backtrack { path, position } => write!(f, "path {path} backtracks at edge {position}"),
            BrokenChain { path, position } => write!(f, "path {path} is disconnected at edge {position}"),
            EndsAtCheck { path } => write!(f, "path {path} ends at a check fiber"),
            CheckFiberRepeated { check } => write!(f, "check fiber {check:?} is visited more than once"),
            EdgeRepeated { edge } => write!(f, "edge {edge:?} is used more than once"),
            PartialBitFiber { bit, used, degree } => {
                write!(f, "bit fiber {bit:?} has {used} of its {degree} edges on the paths")
            }
            WrongEdgeMultiplicity { bit, check, lifted, expected } => write!(
                f,
                "base edge (bit {bit}, check {check}) is lifted {lifted} times, expected {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConclusionReport {
    pub diagnostics: Vec<Diagnostic>,
}

impl ConclusionReport {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Checks that `paths` are backtrackless paths on `cov` between bit fibers,
/// that no check fiber is visited and no edge used twice, that every bit
/// fiber has all or none of its edges on the paths, and that base edge
/// `(x, f)` has exactly `p_x` lifts on them.
pub fn verify_conclusions(cov: &CoverSpec, paths: &[FiberPath], p: &[i64]) -> ConclusionReport {
    use Diagnostic::*;
    let base = cov.base();
    let mut d = Vec::new();
    if p.len() != base.num_bits() {
        d.push(WrongLength {
            expected: base.num_bits(),
            found: p.len(),
        });
    }
    let mut visits: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edge_uses: BTreeMap<FiberEdge, usize> = BTreeMap::new();
    for (pi, path) in paths.iter().enumerate() {
        let edges = path.edges();
        if edges.is_empty() {
            d.push(EmptyPath { path: pi });
            continue;
        }
        for (pos, e) in edges.iter().enumerate() {
            if !cov.has_edge(e.bit.0, e.bit.1, e.check.0, e.check.1) {
                d.push(MissingEdge {
                    path: pi,
                    position: pos,
                    edge: *e,
                });
            }
            *edge_uses.entry(*e).or_default() += 1;
            if pos % 2 == 0 {
                *visits.entry(e.check).or_default() += 1;
            }
        }
        for (pos, w) in edges.windows(2).enumerate() {
            if w[0] == w[1] {
                d.push(Backtrack { path: pi, position: pos + 1 });
            }
            let linked = if pos % 2 == 0 {
                w[0].check == w[1].check
            } else {
                w[0].bit == w[1].bit
            };
            if !linked {
                d.push(BrokenChain { path: pi, position: pos + 1 });
            }
        }
        if edges.len() % 2 == 1 {
            d.push(EndsAtCheck { path: pi });
        }
    }
    d.extend(visits.iter().filter(|(_, &n)| n > 1).map(|(&check, _)| CheckFiberRepeated { check }));
    d.extend(edge_uses.iter().filter(|(_, &n)| n > 1).map(|(&edge, _)| EdgeRepeated { edge }));

    let mut at_bit: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut per_base: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in edge_uses.keys() {
        *at_bit.entry(e.bit).or_default() += 1;
        *per_base.entry((e.bit.0, e.check.0)).or_default() += 1;
    }
    for (&bit, &used) in &at_bit {
        let degree = if bit.0 < base.num_bits() { base.bit_degree(bit.0) } else { 0 };
        if used != degree {
            d.push(PartialBitFiber { bit, used, degree });
        }
    }
    if p.len() == base.num_bits() {
        for &(bit, check) in base.edges() {
            let lifted = per_base.get(&(bit, check)).copied().unwrap_or(0);
            let expected = p[bit].max(0) as u64;
            if lifted as u64 != expected {
                d.push(WrongEdgeMultiplicity {
                    bit,
                    check,
                    lifted,
                    expected,
                });
            }
        }
    }
    ConclusionReport { diagnostics: d }
}
