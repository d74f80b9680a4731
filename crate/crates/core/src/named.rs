//! Named graph families with fixed vertex labelings.
//!
//! Every construction with at least one edge puts an edge on the labels
//! `{0, 1}`. The labelings are part of the public contract because
//! regression fixtures (graph6 strings, witnesses) depend on them:
//!
//! * `K_n`: vertices `0..n`.
//! * complete multipartite `K_{a,b,...}` (including bipartite): labels are
//!   dealt round-robin over the parts that still have room, so part `i`
//!   receives label `i` first. `K_{2,3}` has parts `{0,2}` and `{1,3,4}`.
//! * `C_n`: the cycle `0-1-...-(n-1)-0`.
//! * `P_n`: the path `0-1-...-(n-1)`.
//! * Petersen: outer cycle `0-1-2-3-4`, spokes `i-(i+5)`, inner pentagram
//!   `5-7-9-6-8-5`.
//! * Heawood: Hamiltonian cycle `0-1-...-13` plus chords `0-5, 2-7, 4-9,
//!   6-11, 8-13, 10-1, 12-3` (LCF `[5,-5]^7`).
//! * `Q_d`: vertices are `d`-bit words, edges join words at Hamming distance 1.
//! * `O_n`: the `(n-1)`-subsets of `{0,..,2n-2}` in lexicographic order,
//!   adjacent when disjoint; labels 1 and the first neighbor of 0 are then
//!   swapped so that `{0,1}` is an edge.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamedGraph {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    Cycle(usize),
    Path(usize),
    Petersen,
    Heawood,
    Hypercube(usize),
    Odd(usize),
}

impl NamedGraph {
    pub fn build(&self) -> Result<Graph> {
        match self {
            NamedGraph::Complete(n) => {
                positive(*n, "K_n needs n >= 1")?;
                complete(*n)
            }
            NamedGraph::CompleteBipartite(a, b) => multipartite(&[*a, *b]),
            NamedGraph::CompleteMultipartite(parts) => multipartite(parts),
            NamedGraph::Cycle(n) => {
                if *n < 3 {
                    return Err(Error::InvalidParameter(format!("C_{n}: cycle needs n >= 3")));
                }
                Graph::new(*n, (0..*n).map(|i| (i, (i + 1) % n)))
            }
            NamedGraph::Path(n) => {
                positive(*n, "P_n needs n >= 1")?;
                Graph::new(*n, (1..*n).map(|i| (i - 1, i)))
            }
            NamedGraph::Petersen => {
                let mut edges = Vec::new();
                for i in 0..5 {
                    edges.push((i, (i + 1) % 5));
                    edges.push((i, i + 5));
                    edges.push((5 + i, 5 + (i + 2) % 5));
                }
                Graph::new(10, edges)
            }
            NamedGraph::Heawood => {
                let mut edges: Vec<(usize, usize)> = (0..14).map(|i| (i, (i + 1) % 14)).collect();
                for i in (0..14).step_by(2) {
                    edges.push((i, (i + 5) % 14));
                }
                Graph::new(14, edges)
            }
            NamedGraph::Hypercube(d) => {
                positive(*d, "Q_d needs d >= 1")?;
                if *d > 16 {
                    return Err(Error::InvalidParameter(format!("Q_{d} is too large")));
                }
                let n = 1usize << d;
                let edges = (0..n).flat_map(|v| (0..*d).map(move |b| (v, v ^ (1 << b))));
                Graph::new(n, edges)
            }
            NamedGraph::Odd(k) => odd(*k),
        }
    }

    /// Compact spec string, the inverse of [`FromStr`].
    pub fn spec(&self) -> String {
        self.to_string()
    }
}

fn positive(v: usize, msg: &str) -> Result<()> {
    if v == 0 {
        Err(Error::InvalidParameter(msg.to_string()))
    } else {
        Ok(())
    }
}

fn complete(n: usize) -> Result<Graph> {
    Graph::new(n, (0..n).flat_map(|j| (0..j).map(move |i| (i, j))))
}

fn multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidParameter(format!(
            "complete multipartite part sizes must be positive, got {parts:?}"
        )));
    }
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    let mut remaining = parts.to_vec();
    while part_of.len() < n {
        for (i, left) in remaining.iter_mut().enumerate() {
            if *left > 0 {
                *left -= 1;
                part_of.push(i);
            }
        }
    }
    let part_of = &part_of;
    Graph::new(n, (0..n).flat_map(|j| (0..j).filter(move |&i| part_of[i] != part_of[j]).map(move |i| (i, j))))
}

fn odd(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("O_{k}: odd graphs need n >= 2")));
    }
    let ground = 2 * k - 1;
    if ground > 31 {
        return Err(Error::InvalidParameter(format!("O_{k} is too large")));
    }
    // (k-1)-subsets as bitmasks, in lexicographic order of their sorted elements.
    let mut subsets = Vec::new();
    let mut current = Vec::with_capacity(k - 1);
    fn rec(start: usize, ground: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<u32>) {
        if current.len() == size {
            out.push(current.iter().fold(0u32, |m, &x| m | (1 << x)));
            return;
        }
        for x in start..ground {
            current.push(x);
            rec(x + 1, ground, size, current, out);
            current.pop();
        }
    }
    rec(0, ground, k - 1, &mut current, &mut subsets);
    let n = subsets.len();
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if subsets[i] & subsets[j] == 0 {
                edges.push((i, j));
            }
        }
    }
    let g = Graph::new(n, edges)?;
    let first = g.neighbors(0)[0];
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(1, first);
    Ok(g.relabel(&perm))
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Complete(n) => write!(f, "K{n}"),
            NamedGraph::CompleteBipartite(a, b) => write!(f, "K{a},{b}"),
            NamedGraph::CompleteMultipartite(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "K{}", parts.join(","))
            }
            NamedGraph::Cycle(n) => write!(f, "C{n}"),
            NamedGraph::Path(n) => write!(f, "P{n}"),
            NamedGraph::Petersen => f.write_str("petersen"),
            NamedGraph::Heawood => f.write_str("heawood"),
            NamedGraph::Hypercube(d) => write!(f, "Q{d}"),
            NamedGraph::Odd(n) => write!(f, "O{n}"),
        }
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `K5`, `K3,3`, `K2,2,2`, `C7`, `P3`, `Q3`, `O3`, `petersen`, `heawood`
    /// (case-insensitive, optional `_` after the family letter).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognized graph spec {s:?}"));
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "petersen" => return Ok(NamedGraph::Petersen),
            "heawood" => return Ok(NamedGraph::Heawood),
            _ => {}
        }
        let mut chars = t.chars();
        let family = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str().trim_start_matches('_');
        let rest = rest.trim_start_matches('{').trim_end_matches('}');
        let nums: Vec<usize> = rest
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let single = || if nums.len() == 1 { Ok(nums[0]) } else { Err(bad()) };
        Ok(match family {
            'k' => match nums.len() {
                1 => NamedGraph::Complete(nums[0]),
                2 => NamedGraph::CompleteBipartite(nums[0], nums[1]),
                _ => NamedGraph::CompleteMultipartite(nums),
            },
            'c' => NamedGraph::Cycle(single()?),
            'p' => NamedGraph::Path(single()?),
            'q' => NamedGraph::Hypercube(single()?),
            'o' => NamedGraph::Odd(single()?),
            _ => return Err(bad()),
        })
    }
}
