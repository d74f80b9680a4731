//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet};

use tbsym::{Graph, NamedGraph, Rational};

pub fn named(spec: &str) -> Graph {
    spec.parse::<NamedGraph>().unwrap().build().unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        out(cur);
        return;
    }
    for v in start..n {
        if n - v < k - cur.len() {
            break;
        }
        cur.push(v);
        subsets(n, k, v + 1, cur, out);
        cur.pop();
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        out(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Every cycle, by trying each vertex subset in each cyclic order.
/// Sequences start at the subset minimum with `seq[1] < seq[last]`.
pub fn brute_cycles(g: &Graph) -> BTreeMap<usize, Vec<Vec<usize>>> {
    let a = adjacency(g);
    let n = g.n();
    let mut out: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for r in 3..=n {
        subsets(n, r, 0, &mut Vec::new(), &mut |set| {
            let first = set[0];
            let mut rest = set[1..].to_vec();
            permutations(&mut rest, 0, &mut |p| {
                if p[0] > p[r - 2] {
                    return;
                }
                let mut seq = vec![first];
                seq.extend_from_slice(p);
                if (0..r).all(|i| a[seq[i]][seq[(i + 1) % r]]) {
                    out.entry(r).or_default().push(seq);
                }
            });
        });
    }
    out
}

/// Same output as [`brute_cycles`] by depth-first search from each
/// cycle's minimum vertex; practical for larger sparse graphs.
pub fn dfs_cycles(g: &Graph) -> BTreeMap<usize, Vec<Vec<usize>>> {
    let a = adjacency(g);
    let n = g.n();
    let mut out: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    fn walk(a: &[Vec<bool>], path: &mut Vec<usize>, on: &mut [bool], out: &mut BTreeMap<usize, Vec<Vec<usize>>>) {
        let (start, last) = (path[0], *path.last().unwrap());
        for w in 0..a.len() {
            if !a[last][w] {
                continue;
            }
            if w == start && path.len() >= 3 && path[1] < last {
                out.entry(path.len()).or_default().push(path.clone());
            }
            if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                walk(a, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        walk(&a, &mut vec![s], &mut on, &mut out);
    }
    for cs in out.values_mut() {
        cs.sort();
    }
    out
}

fn cycles_for(g: &Graph) -> BTreeMap<usize, Vec<Vec<usize>>> {
    if g.n() <= 10 {
        brute_cycles(g)
    } else {
        dfs_cycles(g)
    }
}

pub fn brute_spectrum(g: &Graph) -> BTreeMap<usize, u64> {
    cycles_for(g).into_iter().map(|(r, cs)| (r, cs.len() as u64)).collect()
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Per-length incidence tables computed straight from the cycle lists.
type PairTable = HashMap<((usize, usize), (usize, usize)), i64>;

pub struct BruteTables {
    pub edge: BTreeMap<usize, HashMap<(usize, usize), i64>>,
    pub corner: BTreeMap<usize, PairTable>,
    /// `(same - opposite)` orientation count per non-adjacent pair.
    pub cross: BTreeMap<usize, PairTable>,
}

pub fn brute_tables(g: &Graph) -> BruteTables {
    let mut t = BruteTables { edge: BTreeMap::new(), corner: BTreeMap::new(), cross: BTreeMap::new() };
    for (r, cycles) in cycles_for(g) {
        let (e, c, x) = (t.edge.entry(r).or_default(), t.corner.entry(r).or_default(), t.cross.entry(r).or_default());
        for seq in cycles {
            let arcs: Vec<(usize, usize)> = (0..r).map(|i| (seq[i], seq[(i + 1) % r])).collect();
            for (i, &(u, v)) in arcs.iter().enumerate() {
                *e.entry(key(u, v)).or_default() += 1;
                let (p, q) = arcs[(i + 1) % r];
                let pair = if key(u, v) < key(p, q) { (key(u, v), key(p, q)) } else { (key(p, q), key(u, v)) };
                *c.entry(pair).or_default() += 1;
                for &(p, q) in &arcs[i + 1..] {
                    if [u, v].contains(&p) || [u, v].contains(&q) {
                        continue;
                    }
                    let same = (u < v) == (p < q);
                    let pair = if key(u, v) < key(p, q) { (key(u, v), key(p, q)) } else { (key(p, q), key(u, v)) };
                    *x.entry(pair).or_default() += if same { 1 } else { -1 };
                }
            }
        }
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleLevel {
    Fail,
    Almost,
    Full,
}

/// Literal reading of the three conditions for one ordered pair `(r, s)`,
/// solving for ρ from every constraint.
pub fn oracle_pair(g: &Graph, t: &BruteTables, r: usize, s: usize) -> (OracleLevel, Option<Rational>) {
    let empty = HashMap::new();
    let empty2 = HashMap::new();
    let er = t.edge.get(&r).unwrap_or(&empty);
    let es = t.edge.get(&s).unwrap_or(&empty);
    let cr = t.corner.get(&r).unwrap_or(&empty2);
    let cs = t.corner.get(&s).unwrap_or(&empty2);
    let xr = t.cross.get(&r).unwrap_or(&empty2);
    let xs = t.cross.get(&s).unwrap_or(&empty2);
    let mut constraints: Vec<(i64, i64)> = Vec::new();
    for &(u, v) in g.edges() {
        constraints.push((*er.get(&(u, v)).unwrap_or(&0), *es.get(&(u, v)).unwrap_or(&0)));
    }
    let mut corners = HashSet::new();
    let mut crosses = HashSet::new();
    for (i, &e) in g.edges().iter().enumerate() {
        for &f in &g.edges()[i + 1..] {
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                corners.insert((e, f));
            } else {
                crosses.insert((e, f));
            }
        }
    }
    for p in &corners {
        constraints.push((*cr.get(p).unwrap_or(&0), *cs.get(p).unwrap_or(&0)));
    }
    let solve = |cons: &[(i64, i64)], rho: Option<Rational>| -> Option<Option<Rational>> {
        let mut rho = rho;
        for &(a, b) in cons {
            match rho {
                None if b != 0 => {
                    let x = Rational::new(a as i128, b as i128);
                    if x.is_negative() {
                        return None;
                    }
                    rho = Some(x);
                }
                None => {
                    if a != 0 {
                        return None;
                    }
                }
                Some(x) => {
                    if Rational::from(a) != x * Rational::from(b) {
                        return None;
                    }
                }
            }
        }
        Some(rho)
    };
    let Some(rho) = solve(&constraints, None) else { return (OracleLevel::Fail, None) };
    let rho_val = rho.unwrap_or(Rational::ZERO);
    let cross: Vec<(i64, i64)> = crosses.iter().map(|p| (*xr.get(p).unwrap_or(&0), *xs.get(p).unwrap_or(&0))).collect();
    let full = cross.iter().all(|&(a, b)| Rational::from(a) == rho_val * Rational::from(b));
    (if full { OracleLevel::Full } else { OracleLevel::Almost }, Some(rho_val))
}

/// Overall verdict: "trivial", "tb-symmetrical", "almost-tb-symmetrical-only"
/// or "neither".
pub fn oracle_overall(g: &Graph) -> &'static str {
    let t = brute_tables(g);
    let lengths: Vec<usize> = t.edge.keys().copied().collect();
    if lengths.len() <= 1 {
        return "trivial";
    }
    let mut full = true;
    for (i, &r) in lengths.iter().enumerate() {
        for &s in &lengths[i + 1..] {
            let a = oracle_pair(g, &t, r, s).0;
            let b = oracle_pair(g, &t, s, r).0;
            if a == OracleLevel::Fail && b == OracleLevel::Fail {
                return "neither";
            }
            if a != OracleLevel::Full && b != OracleLevel::Full {
                full = false;
            }
        }
    }
    if full {
        "tb-symmetrical"
    } else {
        "almost-tb-symmetrical-only"
    }
}

/// Connected graphs on `n` vertices up to isomorphism, by canonicalizing
/// every labeled graph over all `n!` relabelings.
pub fn connected_count_oracle(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect(), 0, &mut |p| perms.push(p.to_vec()));
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut seen = HashSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        if !connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << index[&key(p[u], p[v])]))
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.len()
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (0..n).all(|v| find(&mut parent, v) == root)
}

/// All automorphisms by testing every permutation (small `n` only).
pub fn brute_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let a = adjacency(g);
    let mut out = Vec::new();
    permutations(&mut (0..g.n()).collect(), 0, &mut |p| {
        if g.edges().iter().all(|&(u, v)| a[p[u]][p[v]]) {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}
