//! Automorphism groups and vertex/edge/s-arc transitivity.
//!
//! The whole group is enumerated (no generating sets): candidates for each
//! vertex image are restricted to its colour class under colour refinement,
//! and vertices are mapped in BFS order so every partial map is checked
//! against all adjacencies and non-adjacencies fixed so far.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_VERTICES: usize = 20;
/// Refuse groups larger than this; |Aut(K_9)| = 362880 fits, |Aut(K_10)| does not.
pub const MAX_GROUP_ORDER: usize = 1_000_000;

/// A vertex permutation; `image()[v]` is where `v` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Panics unless `image` is a bijection of `0..len`.
    pub fn new(image: Vec<usize>) -> Self {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            assert!(x < image.len() && !seen[x], "not a permutation: {image:?}");
            seen[x] = true;
        }
        Permutation(image)
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    pub fn is_automorphism(&self, g: &Graph) -> bool {
        self.0.len() == g.n() && g.edges().iter().all(|&(u, v)| g.has_edge(self.0[u], self.0[v]))
    }
}

/// Stable colour refinement: colours are ranks of (degree, then sorted
/// neighbour colours) signatures, so they are invariant under relabeling.
pub fn refine_colors(g: &Graph, initial: &[u32]) -> Vec<u32> {
    let n = g.n();
    let mut colors = initial.to_vec();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = sigs.iter().map(|s| sorted.binary_search(&s).expect("present") as u32).collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().collect::<HashSet<_>>().len()
}

pub(crate) fn degree_colors(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.degree(v) as u32).collect()
}

/// All automorphisms of `g` (identity first), for `g.n() <= 20`.
pub fn automorphism_group(g: &Graph) -> Result<Vec<Permutation>> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::SizeGuard(format!(
            "graph has {n} vertices; automorphism search is limited to {MAX_VERTICES}"
        )));
    }
    let colors = refine_colors(g, &degree_colors(g));
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();

    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for start in 0..n {
        if !placed[start] {
            for v in g.component_of(start) {
                placed[v] = true;
                order.push(v);
            }
        }
    }

    let mut search = Search {
        adj: &adj,
        colors: &colors,
        order: &order,
        image: vec![usize::MAX; n],
        used: 0,
        found: Vec::new(),
        overflow: false,
    };
    search.run(0);
    if search.overflow {
        return Err(Error::SizeGuard(format!("automorphism group exceeds {MAX_GROUP_ORDER} elements")));
    }
    let mut group = search.found;
    group.sort();
    Ok(group)
}

struct Search<'a> {
    adj: &'a [u32],
    colors: &'a [u32],
    order: &'a [usize],
    image: Vec<usize>,
    used: u32,
    found: Vec<Permutation>,
    overflow: bool,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if self.overflow {
            return;
        }
        if k == self.order.len() {
            if self.found.len() >= MAX_GROUP_ORDER {
                self.overflow = true;
            } else {
                self.found.push(Permutation(self.image.clone()));
            }
            return;
        }
        let v = self.order[k];
        for w in 0..self.order.len() {
            if self.used & (1 << w) != 0 || self.colors[w] != self.colors[v] {
                continue;
            }
            let consistent = self.order[..k].iter().all(|&u| {
                let a = self.adj[v] & (1 << u) != 0;
                let b = self.adj[w] & (1 << self.image[u]) != 0;
                a == b
            });
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used |= 1 << w;
            self.run(k + 1);
            self.used &= !(1 << w);
            self.image[v] = usize::MAX;
        }
    }
}

/// All s-arcs: walks `v_0..v_s` with `v_{i-1} != v_{i+1}`. 0-arcs are the
/// vertices, 1-arcs the ordered edges.
pub fn enumerate_arcs(g: &Graph, s: usize) -> Vec<Vec<usize>> {
    let mut arcs: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for arc in &arcs {
            let last = arc[arc.len() - 1];
            let back = (arc.len() >= 2).then(|| arc[arc.len() - 2]);
            for &w in g.neighbors(last) {
                if Some(w) != back {
                    let mut a = arc.clone();
                    a.push(w);
                    next.push(a);
                }
            }
        }
        arcs = next;
    }
    arcs
}

/// Result of an orbit test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub transitive: bool,
    /// No objects to act on, so transitivity holds vacuously.
    pub vacuous: bool,
    pub count: usize,
}

/// Whether `group` acts transitively on the s-arcs of `g`.
pub fn arc_transitivity(g: &Graph, group: &[Permutation], s: usize) -> Transitivity {
    let arcs = enumerate_arcs(g, s);
    let Some(first) = arcs.first() else {
        return Transitivity { transitive: true, vacuous: true, count: 0 };
    };
    let orbit: HashSet<Vec<usize>> = group.iter().map(|p| first.iter().map(|&v| p.apply(v)).collect()).collect();
    Transitivity { transitive: orbit.len() == arcs.len(), vacuous: false, count: arcs.len() }
}

pub fn edge_transitivity(g: &Graph, group: &[Permutation]) -> Transitivity {
    let Some(&(u, v)) = g.edges().first() else {
        return Transitivity { transitive: true, vacuous: true, count: 0 };
    };
    let orbit: HashSet<(usize, usize)> = group
        .iter()
        .map(|p| {
            let (a, b) = (p.apply(u), p.apply(v));
            (a.min(b), a.max(b))
        })
        .collect();
    Transitivity { transitive: orbit.len() == g.m(), vacuous: false, count: g.m() }
}

pub fn is_s_arc_transitive(g: &Graph, s: usize) -> Result<bool> {
    let group = automorphism_group(g)?;
    Ok(arc_transitivity(g, &group, s).transitive)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityProfile {
    pub group_order: usize,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
    /// Largest `s <= s_cap` with `per_s[s]` true.
    pub max_arc_transitivity: Option<usize>,
    pub per_s: BTreeMap<usize, bool>,
    /// Values of `s` for which the graph has no s-arcs.
    pub vacuous: Vec<usize>,
}

pub fn transitivity_profile(g: &Graph, s_cap: usize) -> Result<TransitivityProfile> {
    let group = automorphism_group(g)?;
    let mut per_s = BTreeMap::new();
    let mut vacuous = Vec::new();
    for s in 0..=s_cap {
        let t = arc_transitivity(g, &group, s);
        per_s.insert(s, t.transitive);
        if t.vacuous {
            vacuous.push(s);
        }
    }
    Ok(TransitivityProfile {
        group_order: group.len(),
        vertex_transitive: per_s[&0],
        edge_transitive: edge_transitivity(g, &group).transitive,
        max_arc_transitivity: per_s.iter().filter(|(_, &t)| t).map(|(&s, _)| s).max(),
        per_s,
        vacuous,
    })
}
