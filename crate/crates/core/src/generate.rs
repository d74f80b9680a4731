//! Isomorph-free generation of connected graphs.
//!
//! Every connected graph on `k` vertices arises from a connected graph on
//! `k - 1` vertices by adding one vertex with a non-empty neighbourhood
//! (delete any non-cut vertex to see this). Each level is built from the
//! previous one that way, and candidates are deduplicated by invariant key
//! followed by an exact isomorphism test.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso::{find_isomorphism_with, invariant, Invariant};

pub const MAX_VERTICES: usize = 9;

/// One graph per isomorphism class of connected graphs on `n` vertices,
/// in a deterministic order.
pub fn generate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedSize(n, MAX_VERTICES));
    }
    if n == 0 {
        return Ok(vec![Graph::empty(0)]);
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        level = extend_level(&level, k);
    }
    Ok(level)
}

fn extend_level(parents: &[Graph], k: usize) -> Vec<Graph> {
    let new = k - 1;
    let mut reps: Vec<(Graph, Invariant)> = Vec::new();
    let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
    for parent in parents {
        for mask in 1u32..(1 << new) {
            let edges =
                parent.edges().iter().copied().chain((0..new).filter(|&v| mask & (1 << v) != 0).map(|v| (v, new)));
            let g = Graph::new(k, edges).expect("valid extension");
            let inv = invariant(&g);
            let bucket = buckets.entry(inv.key).or_default();
            let duplicate = bucket.iter().any(|&i| find_isomorphism_with(&g, &inv, &reps[i].0, &reps[i].1).is_some());
            if !duplicate {
                bucket.push(reps.len());
                reps.push((g, inv));
            }
        }
    }
    reps.into_iter().map(|(g, _)| g).collect()
}
