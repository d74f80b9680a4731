//! Finite simple undirected graphs on vertices `0..n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// An undirected edge stored as `(min, max)`.
pub type Edge = (usize, usize);

const NO_EDGE: u32 = u32::MAX;

/// Immutable simple graph.
///
/// Edges are kept sorted lexicographically; the position of an edge in
/// [`Graph::edges`] is its *edge id*, used by every per-edge table in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    neighbors: Vec<Vec<usize>>,
    edge_ids: Vec<u32>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        let mut edge_ids = vec![NO_EDGE; n * n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            neighbors[u].push(v);
            neighbors[v].push(u);
            edge_ids[u * n + v] = id as u32;
            edge_ids[v * n + u] = id as u32;
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Graph { n, edges, neighbors, edge_ids }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.edge_ids[u * self.n + v] != NO_EDGE
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_ids[u * self.n + v] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    pub(crate) fn edge_id_unchecked(&self, u: usize, v: usize) -> usize {
        let id = self.edge_ids[u * self.n + v];
        debug_assert!(id != NO_EDGE, "{{{u},{v}}} is not an edge");
        id as usize
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// The image of this graph under `perm`, where vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Self::from_sorted(self.n, edges)
    }

    /// Vertices reachable from `start`, in BFS order.
    pub fn component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &self.neighbors[v] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = Graph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.edge_id(2, 0), Some(1));
        assert!(g.has_edge(2, 1));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::new(4, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.n(), 4);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn relabel_preserves_degrees() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(h.edges(), &[(0, 1), (1, 2), (2, 3)]);
        let h = g.relabel(&[1, 0, 2, 3]);
        assert_eq!(h.edges(), &[(0, 1), (0, 2), (2, 3)]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::new(3, [(0, 1), (1, 2)]).unwrap().is_connected());
    }
}
