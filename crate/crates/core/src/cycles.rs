//! Simple-cycle enumeration and the per-length incidence statistics
//! (edges, corners, oriented non-adjacent edge pairs) that TB-symmetry is
//! defined over.
//!
//! A *corner* is an unordered pair of distinct edges sharing a vertex. In a
//! simple graph two distinct adjacent edges share exactly one vertex, and a
//! simple cycle containing both traverses them consecutively.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// A simple cycle in canonical form: `v[0]` is the smallest vertex and
/// `v[1] < v[r-1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Validates `seq` as a cycle of `g` and returns its canonical form.
    pub fn new(g: &Graph, seq: &[usize]) -> Result<Self> {
        let r = seq.len();
        if r < 3 {
            return Err(Error::Precondition(format!("a cycle needs at least 3 vertices, got {seq:?}")));
        }
        let mut seen = vec![false; g.n()];
        for &v in seq {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition(format!("vertex {v} repeats in {seq:?}")));
            }
        }
        for i in 0..r {
            let (a, b) = (seq[i], seq[(i + 1) % r]);
            if !g.has_edge(a, b) {
                return Err(Error::Precondition(format!("{{{a},{b}}} is not an edge ({seq:?})")));
            }
        }
        Ok(Self::canonicalize(seq))
    }

    /// Canonical rotation/reflection of a vertex sequence (no validation).
    pub fn canonicalize(seq: &[usize]) -> Self {
        let r = seq.len();
        let start = (0..r).min_by_key(|&i| seq[i]).expect("non-empty cycle");
        let next = seq[(start + 1) % r];
        let prev = seq[(start + r - 1) % r];
        let v = if next <= prev {
            (0..r).map(|k| seq[(start + k) % r]).collect()
        } else {
            (0..r).map(|k| seq[(start + r - k) % r]).collect()
        };
        Cycle(v)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Edges in traversal order, each normalized to `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let r = self.0.len();
        (0..r).map(move |i| {
            let (a, b) = (self.0[i], self.0[(i + 1) % r]);
            (a.min(b), a.max(b))
        })
    }

    /// The same cycle traversed the other way (not canonical).
    pub fn reversed_sequence(&self) -> Vec<usize> {
        self.0.iter().rev().copied().collect()
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle{:?}", self.0)
    }
}

/// Calls `visit` once per simple cycle with its canonical vertex sequence.
///
/// Rooted backtracking: each cycle is found from its smallest vertex, extending
/// only through larger vertices, and is emitted in the direction with
/// `v[1] < v[r-1]`. `max_len` caps the cycle length.
pub fn for_each_cycle<F: FnMut(&[usize])>(g: &Graph, max_len: Option<usize>, mut visit: F) {
    let n = g.n();
    let cap = max_len.unwrap_or(n).min(n);
    if cap < 3 {
        return;
    }
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    for root in 0..n {
        if g.neighbors(root).iter().filter(|&&w| w > root).count() < 2 {
            continue;
        }
        path.push(root);
        on_path[root] = true;
        extend(g, root, cap, &mut path, &mut on_path, &mut visit);
        on_path[root] = false;
        path.pop();
    }
}

fn extend<F: FnMut(&[usize])>(
    g: &Graph,
    root: usize,
    cap: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut F,
) {
    let u = *path.last().unwrap();
    for &w in g.neighbors(u) {
        if w == root {
            if path.len() >= 3 && path[1] < u {
                visit(path);
            }
        } else if w > root && !on_path[w] && path.len() < cap {
            path.push(w);
            on_path[w] = true;
            extend(g, root, cap, path, on_path, visit);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Every simple cycle of `g`, canonical and sorted lexicographically.
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    for_each_cycle(g, None, |c| out.push(Cycle(c.to_vec())));
    out.sort_unstable();
    out
}

/// `r -> c_r`, the number of cycles of each length (zero lengths omitted).
pub fn cycle_spectrum(g: &Graph) -> BTreeMap<usize, u64> {
    let mut spec = BTreeMap::new();
    for_each_cycle(g, None, |c| bump(spec.entry(c.len()).or_insert(0)));
    spec
}

#[inline]
fn bump(x: &mut u64) {
    *x = x.checked_add(1).expect("cycle count overflow");
}

/// Indexing of corners and non-adjacent edge pairs of a graph.
///
/// Both lists hold `(e, f)` edge-id pairs with `e < f`, sorted lexicographically;
/// since edge ids follow the lexicographic edge order, this is also the
/// lexicographic order on `((a,b),(c,d))`.
#[derive(Debug, Clone)]
pub struct EdgePairs {
    m: usize,
    corners: Vec<(usize, usize)>,
    non_adjacent: Vec<(usize, usize)>,
    slot: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// Classification of an unordered pair of edge ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRef {
    Same,
    Corner(usize),
    NonAdjacent(usize),
}

impl EdgePairs {
    pub fn new(g: &Graph) -> Self {
        let m = g.m();
        let edges = g.edges();
        let mut corners = Vec::new();
        let mut non_adjacent = Vec::new();
        for f in 0..m {
            for e in 0..f {
                let (a, b) = edges[e];
                let (c, d) = edges[f];
                if a == c || a == d || b == c || b == d {
                    corners.push((e, f));
                } else {
                    non_adjacent.push((e, f));
                }
            }
        }
        corners.sort_unstable();
        non_adjacent.sort_unstable();
        let mut slot = vec![NONE; m * m];
        for (i, &(e, f)) in corners.iter().enumerate() {
            slot[e * m + f] = i as u32;
            slot[f * m + e] = i as u32;
        }
        for (i, &(e, f)) in non_adjacent.iter().enumerate() {
            let tagged = (i as u32) | (1 << 31);
            slot[e * m + f] = tagged;
            slot[f * m + e] = tagged;
        }
        EdgePairs { m, corners, non_adjacent, slot }
    }

    pub fn corners(&self) -> &[(usize, usize)] {
        &self.corners
    }

    pub fn non_adjacent(&self) -> &[(usize, usize)] {
        &self.non_adjacent
    }

    pub fn classify(&self, e: usize, f: usize) -> PairRef {
        if e == f {
            return PairRef::Same;
        }
        let s = self.slot[e * self.m + f];
        if s & (1 << 31) != 0 {
            PairRef::NonAdjacent((s & !(1 << 31)) as usize)
        } else {
            PairRef::Corner(s as usize)
        }
    }

    pub fn corner_id(&self, e: usize, f: usize) -> Option<usize> {
        match self.classify(e, f) {
            PairRef::Corner(i) => Some(i),
            _ => None,
        }
    }

    pub fn non_adjacent_id(&self, e: usize, f: usize) -> Option<usize> {
        match self.classify(e, f) {
            PairRef::NonAdjacent(i) => Some(i),
            _ => None,
        }
    }
}

/// Orientation class of a non-adjacent edge pair on a cycle.
///
/// With `p = ({a,b},{c,d})`, `a < b`, `c < d`: orient `c`, take `+1` for each
/// edge traversed in increasing-label direction and `-1` otherwise, and
/// return the product. Reversing the cycle flips both factors, so the result
/// does not depend on the traversal direction.
pub fn sigma(g: &Graph, c: &Cycle, p: (Edge, Edge)) -> Result<i8> {
    let norm = |(u, v): Edge| (u.min(v), u.max(v));
    let (e, f) = (norm(p.0), norm(p.1));
    for (u, v) in [e, f] {
        if !g.has_edge(u, v) {
            return Err(Error::Precondition(format!("{{{u},{v}}} is not an edge")));
        }
    }
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return Err(Error::Precondition(format!("edges {e:?} and {f:?} are adjacent")));
    }
    Ok(direction(c.vertices(), e)? * direction(c.vertices(), f)?)
}

/// `+1` if the sequence traverses `(a, b)` as `a -> b`, `-1` for `b -> a`.
pub(crate) fn direction(seq: &[usize], (a, b): Edge) -> Result<i8> {
    let r = seq.len();
    let i = seq
        .iter()
        .position(|&x| x == a)
        .ok_or_else(|| Error::Precondition(format!("edge ({a},{b}) is not on the cycle")))?;
    if seq[(i + 1) % r] == b {
        Ok(1)
    } else if seq[(i + r - 1) % r] == b {
        Ok(-1)
    } else {
        Err(Error::Precondition(format!("edge ({a},{b}) is not on the cycle")))
    }
}

/// Counts for one cycle length.
#[derive(Debug, Clone, Default)]
pub struct LengthCounts {
    pub cycles: u64,
    /// Indexed by edge id.
    pub edges: Vec<u64>,
    /// Indexed by corner id.
    pub corners: Vec<u64>,
    /// Indexed by non-adjacent pair id: `[n_plus, n_minus]`.
    pub oriented: Vec<[u64; 2]>,
}

/// Per-length incidence statistics of a graph.
///
/// The cycles themselves are retained (packed) so the oriented-pair tables can
/// be filled in later, which is the expensive part of the computation.
#[derive(Debug, Clone)]
pub struct IncidenceProfile {
    n: usize,
    edges: Vec<Edge>,
    pairs: EdgePairs,
    by_len: Vec<Option<LengthCounts>>,
    has_oriented: bool,
    packed: Vec<u32>,
    starts: Vec<u32>,
}

impl IncidenceProfile {
    /// Full profile including the oriented-pair tables.
    pub fn new(g: &Graph) -> Self {
        let mut p = Self::without_oriented(g);
        p.compute_oriented(g);
        p
    }

    /// Edge and corner tables only; see [`IncidenceProfile::compute_oriented`].
    pub fn without_oriented(g: &Graph) -> Self {
        let pairs = EdgePairs::new(g);
        let n = g.n();
        let mut by_len: Vec<Option<LengthCounts>> = vec![None; n + 1];
        let mut packed = Vec::new();
        let mut starts = Vec::new();
        let m = g.m();
        let n_corners = pairs.corners().len();
        for_each_cycle(g, None, |c| {
            let r = c.len();
            starts.push(packed.len() as u32);
            packed.extend(c.iter().map(|&v| v as u32));
            let lc = by_len[r].get_or_insert_with(|| LengthCounts {
                cycles: 0,
                edges: vec![0; m],
                corners: vec![0; n_corners],
                oriented: Vec::new(),
            });
            bump(&mut lc.cycles);
            let mut prev = g.edge_id_unchecked(c[r - 1], c[0]);
            for i in 0..r {
                let e = g.edge_id_unchecked(c[i], c[(i + 1) % r]);
                bump(&mut lc.edges[e]);
                let corner = pairs.corner_id(prev, e).expect("consecutive cycle edges form a corner");
                bump(&mut lc.corners[corner]);
                prev = e;
            }
        });
        IncidenceProfile { n, edges: g.edges().to_vec(), pairs, by_len, has_oriented: false, packed, starts }
    }

    /// Fills the oriented non-adjacent pair tables (idempotent).
    pub fn compute_oriented(&mut self, g: &Graph) {
        if self.has_oriented {
            return;
        }
        assert_eq!(g.edges(), &self.edges[..], "profile used with a different graph");
        let n_pairs = self.pairs.non_adjacent().len();
        for lc in self.by_len.iter_mut().flatten() {
            lc.oriented = vec![[0, 0]; n_pairs];
        }
        let mut ids = Vec::with_capacity(self.n);
        let mut dirs = Vec::with_capacity(self.n);
        for k in 0..self.starts.len() {
            let lo = self.starts[k] as usize;
            let hi = self.starts.get(k + 1).map_or(self.packed.len(), |&s| s as usize);
            let c = &self.packed[lo..hi];
            let r = c.len();
            ids.clear();
            dirs.clear();
            for i in 0..r {
                let (a, b) = (c[i] as usize, c[(i + 1) % r] as usize);
                ids.push(g.edge_id_unchecked(a, b));
                dirs.push(a < b);
            }
            let lc = self.by_len[r].as_mut().expect("length present");
            // non-consecutive cycle edges are exactly the non-adjacent pairs on the cycle
            for i in 0..r {
                for j in i + 2..r {
                    if i == 0 && j == r - 1 {
                        continue;
                    }
                    let q = self
                        .pairs
                        .non_adjacent_id(ids[i], ids[j])
                        .expect("non-consecutive cycle edges are non-adjacent");
                    let class = if dirs[i] == dirs[j] { 0 } else { 1 };
                    bump(&mut lc.oriented[q][class]);
                }
            }
        }
        self.has_oriented = true;
    }

    pub fn has_oriented(&self) -> bool {
        self.has_oriented
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph_edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn pairs(&self) -> &EdgePairs {
        &self.pairs
    }

    /// Lengths with at least one cycle, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        (0..self.by_len.len()).filter(|&r| self.by_len[r].is_some()).collect()
    }

    pub fn length(&self, r: usize) -> Option<&LengthCounts> {
        self.by_len.get(r).and_then(|x| x.as_ref())
    }

    pub fn cycle_count(&self, r: usize) -> u64 {
        self.length(r).map_or(0, |l| l.cycles)
    }

    pub fn cycle_counts(&self) -> BTreeMap<usize, u64> {
        self.lengths().into_iter().map(|r| (r, self.cycle_count(r))).collect()
    }

    pub fn total_cycles(&self) -> usize {
        self.starts.len()
    }

    /// Number of `r`-cycles through the edge with id `e`.
    pub fn edge_count(&self, r: usize, e: usize) -> u64 {
        self.length(r).map_or(0, |l| l.edges[e])
    }

    pub fn corner_count(&self, r: usize, corner: usize) -> u64 {
        self.length(r).map_or(0, |l| l.corners[corner])
    }

    /// `(n_plus, n_minus)` for a non-adjacent pair id. Panics if the oriented
    /// tables have not been computed.
    pub fn oriented_counts(&self, r: usize, pair: usize) -> (u64, u64) {
        assert!(self.has_oriented, "oriented tables not computed");
        self.length(r).map_or((0, 0), |l| (l.oriented[pair][0], l.oriented[pair][1]))
    }

    /// Iterates stored cycles as canonical vertex sequences.
    pub fn cycles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.starts.len()).map(move |k| {
            let lo = self.starts[k] as usize;
            let hi = self.starts.get(k + 1).map_or(self.packed.len(), |&s| s as usize);
            self.packed[lo..hi].iter().map(|&v| v as usize).collect()
        })
    }
}

/// Free-function form of [`IncidenceProfile::new`].
pub fn incidence_profile(g: &Graph) -> IncidenceProfile {
    IncidenceProfile::new(g)
}
