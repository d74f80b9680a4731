//! Graph statistics and the cycle-preserving graph operations.
//!
//! Labeling convention: the first operand keeps its labels, the second is
//! shifted past it, and newly created vertices take the next free labels.

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub connected: bool,
    pub min_degree: usize,
    pub max_degree: usize,
    pub has_pendant: bool,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let degrees = (0..g.n()).map(|v| g.degree(v));
    let min_degree = degrees.clone().min().unwrap_or(0);
    let max_degree = degrees.max().unwrap_or(0);
    GraphStats { connected: g.is_connected(), min_degree, max_degree, has_pendant: g.n() >= 1 && min_degree == 1 }
}

/// Attaches a new vertex (labeled `g.n()`) to `v`.
pub fn add_pendant(g: &Graph, v: usize) -> Result<Graph> {
    g.check_vertex(v)?;
    let n = g.n();
    Graph::new(n + 1, g.edges().iter().copied().chain([(v, n)]))
}

pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let off = g1.n();
    let edges = g1.edges().iter().copied().chain(g2.edges().iter().map(|&(u, v)| (u + off, v + off)));
    Graph::new(g1.n() + g2.n(), edges).expect("union of valid graphs is valid")
}

/// 1-clique sum: `v2` of `g2` is identified with `v1` of `g1`. The other
/// vertices of `g2` keep their relative order and follow `g1`'s labels.
pub fn clique_sum_vertex(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Graph> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let off = g1.n();
    let map = |w: usize| match w.cmp(&v2) {
        std::cmp::Ordering::Equal => v1,
        std::cmp::Ordering::Less => off + w,
        std::cmp::Ordering::Greater => off + w - 1,
    };
    let edges = g1.edges().iter().copied().chain(g2.edges().iter().map(|&(u, v)| (map(u), map(v))));
    Graph::new(g1.n() + g2.n() - 1, edges)
}

/// Connects `v1` in `g1` to `v2` in `g2` by a path through `k` fresh vertices
/// (`k = 0` adds the single edge `{v1, v2}`).
pub fn path_join(g1: &Graph, v1: usize, g2: &Graph, v2: usize, k: usize) -> Result<Graph> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let base = disjoint_union(g1, g2);
    let first_new = base.n();
    let mut path = Vec::with_capacity(k + 2);
    path.push(v1);
    path.extend(first_new..first_new + k);
    path.push(g1.n() + v2);
    let edges = base.edges().iter().copied().chain(path.windows(2).map(|w| (w[0], w[1])));
    Graph::new(first_new + k, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::NamedGraph;

    fn k(n: usize) -> Graph {
        NamedGraph::Complete(n).build().unwrap()
    }

    #[test]
    fn stats() {
        let c5 = NamedGraph::Cycle(5).build().unwrap();
        assert_eq!(graph_stats(&c5), GraphStats { connected: true, min_degree: 2, max_degree: 2, has_pendant: false });
        let p3 = NamedGraph::Path(3).build().unwrap();
        let s = graph_stats(&p3);
        assert!(s.connected && s.has_pendant && s.min_degree == 1);
        assert!(!graph_stats(&disjoint_union(&k(3), &k(3))).connected);
        let e = graph_stats(&Graph::empty(0));
        assert!(e.connected && !e.has_pendant);
    }

    #[test]
    fn pendant() {
        let g = add_pendant(&k(3), 0).unwrap();
        assert_eq!((g.n(), g.m()), (4, 4));
        assert!(g.has_edge(0, 3));
        assert_eq!(add_pendant(&Graph::empty(1), 0).unwrap(), k(2));
        assert!(add_pendant(&k(3), 3).is_err());
    }

    #[test]
    fn union_and_sums() {
        let u = disjoint_union(&k(3), &k(3));
        assert_eq!((u.n(), u.m()), (6, 6));
        let cs = clique_sum_vertex(&k(4), 0, &k(4), 0).unwrap();
        assert_eq!((cs.n(), cs.m()), (7, 12));
        assert_eq!(cs.degree(0), 6);
        let bowtie = clique_sum_vertex(&k(3), 0, &k(3), 0).unwrap();
        assert_eq!((bowtie.n(), bowtie.m()), (5, 6));
        assert!(clique_sum_vertex(&k(3), 5, &k(3), 0).is_err());
        assert!(clique_sum_vertex(&k(3), 0, &k(3), 3).is_err());
    }

    #[test]
    fn clique_sum_on_interior_vertex() {
        let g = clique_sum_vertex(&k(2), 1, &NamedGraph::Path(3).build().unwrap(), 1).unwrap();
        // path 0-1-2 with its middle merged into vertex 1: labels 0->2, 2->3
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (1, 3)]);
    }

    #[test]
    fn joins() {
        let j0 = path_join(&k(4), 0, &k(4), 0, 0).unwrap();
        assert_eq!((j0.n(), j0.m()), (8, 13));
        assert!(j0.has_edge(0, 4));
        let j1 = path_join(&k(4), 0, &k(4), 0, 1).unwrap();
        assert_eq!((j1.n(), j1.m()), (9, 14));
        assert!(j1.has_edge(0, 8) && j1.has_edge(4, 8));
        assert!(path_join(&k(4), 4, &k(4), 0, 1).is_err());
    }
}
