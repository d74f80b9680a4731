mod common;

use std::collections::BTreeMap;

use common::{
    brute_automorphisms, brute_cycles, brute_spectrum, brute_tables, dfs_cycles, named, oracle_overall, oracle_pair,
    OracleLevel,
};
use proptest::prelude::*;
use tbsym::automorphism::{arc_transitivity, automorphism_group, Permutation};
use tbsym::cycles::{cycle_spectrum, incidence_profile, IncidenceProfile};
use tbsym::graph6::{encode_graph6, parse_graph6};
use tbsym::ops::{add_pendant, clique_sum_vertex, disjoint_union, path_join};
use tbsym::symmetry::{check_pair, classify, Level};
use tbsym::{Graph, Rational};

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    Graph::new(n, pairs.zip(bits).filter(|(_, &b)| b).map(|(p, _)| p)).unwrap()
}

fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn spectrum_sum(a: &BTreeMap<usize, u64>, b: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    let mut out = a.clone();
    for (r, c) in b {
        *out.entry(*r).or_default() += c;
    }
    out
}

#[test]
fn graph6_round_trip_exhaustive_small() {
    for n in 0usize..=5 {
        let k = n * n.saturating_sub(1) / 2;
        for mask in 0u32..(1 << k) {
            let bits: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
            let g = graph_from_bits(n, &bits);
            let text = encode_graph6(&g).unwrap();
            assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
        }
    }
}

#[test]
fn oracle_agrees_on_all_small_connected_graphs() {
    for n in 1..=7 {
        for g in tbsym::generate::generate_graphs(n).unwrap() {
            let report = classify(&g);
            assert_eq!(report.overall.as_str(), oracle_overall(&g), "{}", encode_graph6(&g).unwrap());
        }
    }
}

#[test]
fn oracle_agrees_on_named_graphs() {
    for spec in ["K4", "K5", "K3,3", "K2,3", "K2,2,2", "petersen", "Q3", "C6", "heawood"] {
        let g = named(spec);
        assert_eq!(classify(&g).overall.as_str(), oracle_overall(&g), "{spec}");
    }
}

#[test]
fn edge_transitive_rho_formula() {
    for spec in ["K4", "K5", "K6", "K3,3", "K3,4", "petersen", "Q3", "heawood", "O3"] {
        let g = named(spec);
        let group = automorphism_group(&g).unwrap();
        assert!(tbsym::automorphism::edge_transitivity(&g, &group).transitive, "{spec}");
        let report = classify(&g);
        for p in report.pairs.iter().filter(|p| p.level.is_almost()) {
            let (cr, cs) = (report.cycle_count(p.r), report.cycle_count(p.s));
            let want = Rational::new((p.r as u64 * cr) as i128, (p.s as u64 * cs) as i128);
            assert_eq!(p.rho, Some(want), "{spec} ({}, {})", p.r, p.s);
        }
    }
}

#[test]
fn absent_lengths_follow_the_no_cycle_rule() {
    let c5 = named("C5");
    let profile = IncidenceProfile::new(&c5);
    let p = check_pair(&profile, 3, 5, true).unwrap();
    assert_eq!((p.level, p.rho), (Level::Full, Some(Rational::ZERO)));
    let q = check_pair(&profile, 3, 4, true).unwrap();
    assert_eq!((q.level, q.rho), (Level::TrivialNoCycles, Some(Rational::ZERO)));
    let r = check_pair(&profile, 5, 3, true).unwrap();
    assert_eq!(r.level, Level::FailCondition1);
}

#[test]
fn automorphisms_match_brute_force_on_small_graphs() {
    for n in 1..=6 {
        for g in tbsym::generate::generate_graphs(n).unwrap() {
            let group: Vec<Vec<usize>> = automorphism_group(&g).unwrap().iter().map(|p| p.image().to_vec()).collect();
            let mut sorted = group.clone();
            sorted.sort();
            assert_eq!(sorted, brute_automorphisms(&g), "{}", encode_graph6(&g).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip_random(g in arb_graph(6, 20)) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn spectrum_matches_brute_force(g in arb_graph(3, 7)) {
        prop_assert_eq!(cycle_spectrum(&g), brute_spectrum(&g));
        let mut perm = brute_cycles(&g);
        for cs in perm.values_mut() {
            cs.sort();
        }
        prop_assert_eq!(perm, dfs_cycles(&g));
    }

    #[test]
    fn handshake_identities(g in arb_graph(3, 7)) {
        let p = incidence_profile(&g);
        let pairs = p.pairs().clone();
        for r in p.lengths() {
            let c = p.cycle_count(r);
            let edge_sum: u64 = (0..g.m()).map(|e| p.edge_count(r, e)).sum();
            let corner_sum: u64 = (0..pairs.corners().len()).map(|q| p.corner_count(r, q)).sum();
            let cross_sum: u64 = (0..pairs.non_adjacent().len())
                .map(|q| { let (a, b) = p.oriented_counts(r, q); a + b })
                .sum();
            prop_assert_eq!(edge_sum, r as u64 * c);
            prop_assert_eq!(corner_sum, r as u64 * c);
            prop_assert_eq!(cross_sum, c * (r * (r - 3) / 2) as u64);
        }
    }

    #[test]
    fn pairs_match_oracle(g in arb_graph(4, 7)) {
        let t = brute_tables(&g);
        let report = classify(&g);
        for p in &report.pairs {
            let (level, rho) = oracle_pair(&g, &t, p.r, p.s);
            let ours = match p.level {
                Level::Full | Level::TrivialNoCycles => OracleLevel::Full,
                Level::Almost | Level::FailCondition3 => OracleLevel::Almost,
                Level::FailCondition1 | Level::FailCondition2 => OracleLevel::Fail,
            };
            prop_assert_eq!(ours, level, "({}, {})", p.r, p.s);
            if level != OracleLevel::Fail {
                prop_assert_eq!(p.rho, rho);
            }
        }
    }

    #[test]
    fn relabeling_preserves_classification((g, perm) in arb_graph(3, 8).prop_flat_map(|g| { let n = g.n(); (Just(g), arb_perm(n)) })) {
        let h = g.relabel(&perm);
        let (a, b) = (classify(&g), classify(&h));
        prop_assert_eq!(a.cycle_spectrum, b.cycle_spectrum);
        prop_assert_eq!(a.overall, b.overall);
        prop_assert_eq!(a.rho, b.rho);
    }

    #[test]
    fn reciprocity(g in arb_graph(4, 7)) {
        let report = classify(&g);
        for p in &report.pairs {
            let Some(rho) = p.rho else { continue };
            if !p.level.is_almost() || rho.is_zero() {
                continue;
            }
            let q = report.pair(p.s, p.r).unwrap();
            prop_assert!(q.level.is_almost());
            prop_assert_eq!(q.rho, Some(rho.recip()));
            prop_assert_eq!(q.level, p.level);
        }
    }

    #[test]
    fn operations_preserve_cycle_multiset(g1 in arb_graph(1, 6), g2 in arb_graph(1, 6), a in 0usize..6, b in 0usize..6, k in 0usize..3) {
        let (v1, v2) = (a % g1.n(), b % g2.n());
        let s1 = cycle_spectrum(&g1);
        let s2 = cycle_spectrum(&g2);
        let both = spectrum_sum(&s1, &s2);
        prop_assert_eq!(cycle_spectrum(&disjoint_union(&g1, &g2)), both.clone());
        prop_assert_eq!(cycle_spectrum(&clique_sum_vertex(&g1, v1, &g2, v2).unwrap()), both.clone());
        prop_assert_eq!(cycle_spectrum(&path_join(&g1, v1, &g2, v2, k).unwrap()), both);
        prop_assert_eq!(cycle_spectrum(&add_pendant(&g1, v1).unwrap()), s1);
    }

    #[test]
    fn group_axioms(g in arb_graph(1, 9)) {
        let group = automorphism_group(&g).unwrap();
        prop_assert_eq!(&group[0], &Permutation::identity(g.n()));
        let set: std::collections::HashSet<Vec<usize>> = group.iter().map(|p| p.image().to_vec()).collect();
        prop_assert_eq!(set.len(), group.len());
        for p in group.iter().take(12) {
            prop_assert!(p.is_automorphism(&g));
            prop_assert!(set.contains(p.inverse().image()));
            for q in group.iter().take(12) {
                prop_assert!(set.contains(p.compose(q).image()));
            }
        }
    }

    #[test]
    fn arc_transitivity_is_monotone(g in arb_graph(3, 8)) {
        // every (s-1)-arc extends to an s-arc when the minimum degree is at least 2
        let min_degree = (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0);
        prop_assume!(min_degree >= 2);
        let group = automorphism_group(&g).unwrap();
        let t: Vec<bool> = (0..=4).map(|s| arc_transitivity(&g, &group, s).transitive).collect();
        for s in 1..t.len() {
            prop_assert!(!t[s] || t[s - 1], "{:?}", t);
        }
    }
}
