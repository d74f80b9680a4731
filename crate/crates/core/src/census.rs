//! Exhaustive TB-symmetry census over streams of graph6 lines.
//!
//! Each graph runs through a rejection ladder: connectivity, minimum degree,
//! number of distinct cycle lengths, then classification with early exit.
//! Work is spread over a rayon pool in fixed-size chunks and results are
//! emitted in input order, so output does not depend on the worker count.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::automorphism::{arc_transitivity, automorphism_group};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{encode_graph6, parse_graph6};
use crate::iso::are_isomorphic;
use crate::named::NamedGraph;
use crate::ops::{clique_sum_vertex, graph_stats, path_join};
use crate::rational::Rational;
use crate::symmetry::{classify_with, ClassifyOptions, Overall};

const CHUNK: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub require_connected: bool,
    pub require_min_degree_2: bool,
    /// Drop graphs with at most one distinct cycle length instead of
    /// emitting them as trivial records.
    pub skip_single_cycle_length: bool,
    pub full_check: bool,
    pub n_max: usize,
    /// Test every graph for 2-arc transitivity and confirm such graphs are
    /// at least almost-TB-symmetrical.
    pub two_arc_audit: bool,
    /// Worker threads; `None` uses rayon's global pool.
    pub workers: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            require_connected: true,
            require_min_degree_2: true,
            skip_single_cycle_length: true,
            full_check: true,
            n_max: 9,
            two_arc_audit: true,
            workers: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub cycle_lengths: Vec<usize>,
    pub cycle_spectrum: BTreeMap<usize, u64>,
    pub status: Overall,
    pub rho_table: Vec<(usize, usize, Rational)>,
    /// complete / complete-bipartite / join / cube / trivial
    pub matched_family: Option<String>,
    /// The construction the graph is isomorphic to, e.g. `K3,4` or
    /// `pathjoin(K4,K4,k=1)`.
    pub matched_graph: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rejection {
    Disconnected,
    MinDegree,
    SingleCycleLength,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoArc {
    /// Not 2-arc transitive.
    No,
    /// 2-arc transitive and at least almost-TB-symmetrical.
    Holds,
    /// 2-arc transitive but neither.
    Counterexample,
    /// Automorphism group beyond the enumeration limits.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CensusOutcome {
    Record { record: CensusRecord, two_arc: Option<TwoArc> },
    Rejected { graph6: String, n: usize, reason: Rejection, two_arc: Option<TwoArc> },
    ParseError { line: usize, message: String },
}

impl CensusOutcome {
    pub fn record(&self) -> Option<&CensusRecord> {
        match self {
            CensusOutcome::Record { record, .. } => Some(record),
            _ => None,
        }
    }

    fn two_arc(&self) -> Option<TwoArc> {
        match self {
            CensusOutcome::Record { two_arc, .. } | CensusOutcome::Rejected { two_arc, .. } => *two_arc,
            CensusOutcome::ParseError { .. } => None,
        }
    }

    fn graph6(&self) -> Option<&str> {
        match self {
            CensusOutcome::Record { record, .. } => Some(&record.graph6),
            CensusOutcome::Rejected { graph6, .. } => Some(graph6),
            CensusOutcome::ParseError { .. } => None,
        }
    }
}

/// Processes one graph6 line (`line` is its 1-based position).
pub fn census_line(line: usize, text: &str, opts: &CensusOptions) -> CensusOutcome {
    let g = match parse_graph6(text.as_bytes()) {
        Ok(g) => g,
        Err(e) => return CensusOutcome::ParseError { line, message: e.to_string() },
    };
    if g.n() > opts.n_max {
        return CensusOutcome::ParseError {
            line,
            message: format!("graph has {} vertices, above the limit of {}", g.n(), opts.n_max),
        };
    }
    census_graph(&g, opts)
}

pub fn census_graph(g: &Graph, opts: &CensusOptions) -> CensusOutcome {
    let graph6 = encode_graph6(g).expect("census graphs are small");
    let n = g.n();
    let stats = graph_stats(g);
    let copts = ClassifyOptions { full_check: opts.full_check, early_exit: true };
    let two_arc = opts.two_arc_audit.then(|| two_arc_check(g, copts));
    let reject = |reason| CensusOutcome::Rejected { graph6: graph6.clone(), n, reason, two_arc };
    if opts.require_connected && !stats.connected {
        return reject(Rejection::Disconnected);
    }
    if opts.require_min_degree_2 && n > 0 && stats.min_degree < 2 {
        return reject(Rejection::MinDegree);
    }
    let report = classify_with(g, copts);
    if report.overall == Overall::Trivial && opts.skip_single_cycle_length {
        return reject(Rejection::SingleCycleLength);
    }
    if report.overall == Overall::Neither {
        return reject(Rejection::Neither);
    }
    let (matched_family, matched_graph) = match match_family(g) {
        Some((family, name)) => (Some(family.to_string()), Some(name)),
        None if report.overall == Overall::Trivial => (Some("trivial".to_string()), None),
        None => (None, None),
    };
    let record = CensusRecord {
        graph6,
        n,
        m: g.m(),
        cycle_lengths: report.cycle_lengths,
        cycle_spectrum: report.cycle_spectrum,
        status: report.overall,
        rho_table: report.rho,
        matched_family,
        matched_graph,
    };
    CensusOutcome::Record { record, two_arc }
}

fn two_arc_check(g: &Graph, copts: ClassifyOptions) -> TwoArc {
    if !two_arc_degree_screen(g) {
        return TwoArc::No;
    }
    let Ok(group) = automorphism_group(g) else { return TwoArc::Skipped };
    if !arc_transitivity(g, &group, 2).transitive {
        return TwoArc::No;
    }
    if classify_with(g, copts).overall.is_almost() {
        TwoArc::Holds
    } else {
        TwoArc::Counterexample
    }
}

/// Necessary condition for 2-arc transitivity: automorphisms preserve
/// degree, so all 2-arcs must start at vertices of one degree and pass
/// through middles of one degree.
fn two_arc_degree_screen(g: &Graph) -> bool {
    let mut start = None;
    let mut middle = None;
    for v in 0..g.n() {
        let d = g.degree(v);
        if d >= 2 && *middle.get_or_insert(d) != d {
            return false;
        }
        let is_start = g.neighbors(v).iter().any(|&u| g.degree(u) >= 2);
        if is_start && *start.get_or_insert(d) != d {
            return false;
        }
    }
    true
}

fn complete(n: usize) -> Graph {
    NamedGraph::Complete(n).build().expect("K_n")
}

/// Named constructions the census can recognize on `n` vertices and `m`
/// edges, as `(family, name, graph)`.
fn candidates(n: usize, m: usize) -> Vec<(&'static str, String, Graph)> {
    let mut out = Vec::new();
    if m == n * n.saturating_sub(1) / 2 {
        out.push(("complete", format!("K{n}"), NamedGraph::Complete(n).build().expect("K_n")));
    }
    for a in 1..=n / 2 {
        let b = n - a;
        if a * b == m {
            let g = NamedGraph::CompleteBipartite(a, b).build().expect("K_{a,b}");
            out.push(("complete-bipartite", format!("K{a},{b}"), g));
        }
    }
    for a in 3..n {
        for b in a..n {
            let base = a * (a - 1) / 2 + b * (b - 1) / 2;
            let (ka, kb) = (complete(a), complete(b));
            if a + b - 1 == n && m == base {
                let g = clique_sum_vertex(&ka, 0, &kb, 0).expect("join");
                out.push(("join", format!("cliquesum(K{a},K{b})"), g));
            }
            if a + b <= n && m == base + n - a - b + 1 {
                let k = n - a - b;
                let g = path_join(&ka, 0, &kb, 0, k).expect("join");
                out.push(("join", format!("pathjoin(K{a},K{b},k={k})"), g));
            }
        }
    }
    if n.is_power_of_two() && n >= 2 {
        let d = n.trailing_zeros() as usize;
        if m == d * n / 2 {
            out.push(("cube", format!("Q{d}"), NamedGraph::Hypercube(d).build().expect("Q_d")));
        }
    }
    out
}

/// The recognized construction `g` is isomorphic to, if any.
pub fn match_family(g: &Graph) -> Option<(&'static str, String)> {
    candidates(g.n(), g.m()).into_iter().find(|(_, _, h)| are_isomorphic(g, h)).map(|(family, name, _)| (family, name))
}

/// Runs the census over `lines`, handing each outcome to `emit` in input
/// order, and returns the summary. Blank lines and a leading `>>graph6<<`
/// header line are skipped.
pub fn census_stream<I, F>(lines: I, opts: &CensusOptions, mut emit: F) -> Result<CensusSummary>
where
    I: IntoIterator<Item = std::io::Result<String>>,
    F: FnMut(&CensusOutcome) -> Result<()>,
{
    let pool = match opts.workers {
        Some(k) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?,
        ),
        None => None,
    };
    let mut summary = SummaryBuilder::default();
    let mut batch: Vec<(usize, String)> = Vec::with_capacity(CHUNK);
    let mut flush = |batch: &mut Vec<(usize, String)>, summary: &mut SummaryBuilder| -> Result<()> {
        let work = || batch.par_iter().map(|(i, t)| census_line(*i, t, opts)).collect::<Vec<_>>();
        let outcomes = match &pool {
            Some(p) => p.install(work),
            None => work(),
        };
        for o in &outcomes {
            summary.add(o);
            emit(o)?;
        }
        batch.clear();
        Ok(())
    };
    for (i, line) in lines.into_iter().enumerate() {
        let line = line.map_err(|e| Error::Graph6(format!("read error: {e}")))?;
        let text = line.trim();
        if text.is_empty() || (i == 0 && text == ">>graph6<<") {
            continue;
        }
        batch.push((i + 1, text.to_string()));
        if batch.len() == CHUNK {
            flush(&mut batch, &mut summary)?;
        }
    }
    flush(&mut batch, &mut summary)?;
    Ok(summary.finish())
}

/// Census of every connected graph on `1..=n_max` vertices from the
/// internal generator.
pub fn census_generated<F>(n_max: usize, opts: &CensusOptions, emit: F) -> Result<CensusSummary>
where
    F: FnMut(&CensusOutcome) -> Result<()>,
{
    let mut lines = Vec::new();
    for n in 1..=n_max {
        for g in crate::generate::generate_graphs(n)? {
            lines.push(Ok(encode_graph6(&g)?));
        }
    }
    census_stream(lines, opts, emit)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StatusCounts {
    pub graphs: usize,
    pub disconnected: usize,
    pub min_degree_below_2: usize,
    pub trivial: usize,
    pub full: usize,
    pub almost_only: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survivor {
    pub graph6: String,
    pub n: usize,
    pub status: Overall,
    pub matched_graph: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TwoArcAudit {
    pub examined: usize,
    pub two_arc_transitive: usize,
    pub skipped: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    /// Joins of two complete graphs among the survivors, as
    /// `(n, construction)`.
    pub found: Vec<(usize, String)>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub per_n: BTreeMap<usize, StatusCounts>,
    pub parse_errors: usize,
    /// Nontrivial survivors, deduplicated by graph6, in order of first
    /// appearance.
    pub survivors: Vec<Survivor>,
    pub joins: JoinReport,
    pub two_arc_audit: TwoArcAudit,
}

impl CensusSummary {
    pub fn survivor_names(&self) -> Vec<String> {
        self.survivors.iter().map(|s| s.matched_graph.clone().unwrap_or_else(|| s.graph6.clone())).collect()
    }
}

#[derive(Default)]
struct SummaryBuilder {
    per_n: BTreeMap<usize, StatusCounts>,
    parse_errors: usize,
    survivors: Vec<Survivor>,
    seen: HashSet<String>,
    audit: TwoArcAudit,
}

impl SummaryBuilder {
    fn add(&mut self, o: &CensusOutcome) {
        match o.two_arc() {
            None => {}
            Some(TwoArc::Skipped) => self.audit.skipped += 1,
            Some(t) => {
                self.audit.examined += 1;
                if t != TwoArc::No {
                    self.audit.two_arc_transitive += 1;
                }
                if t == TwoArc::Counterexample {
                    self.audit.counterexamples.push(o.graph6().unwrap_or_default().to_string());
                }
            }
        }
        match o {
            CensusOutcome::ParseError { .. } => self.parse_errors += 1,
            CensusOutcome::Rejected { n, reason, .. } => {
                let c = self.per_n.entry(*n).or_default();
                c.graphs += 1;
                match reason {
                    Rejection::Disconnected => c.disconnected += 1,
                    Rejection::MinDegree => c.min_degree_below_2 += 1,
                    Rejection::SingleCycleLength => c.trivial += 1,
                    Rejection::Neither => c.fail += 1,
                }
            }
            CensusOutcome::Record { record, .. } => {
                let c = self.per_n.entry(record.n).or_default();
                c.graphs += 1;
                match record.status {
                    Overall::Trivial => c.trivial += 1,
                    Overall::TbSymmetrical => c.full += 1,
                    Overall::AlmostOnly => c.almost_only += 1,
                    Overall::Neither => c.fail += 1,
                }
                if record.status != Overall::Trivial && self.seen.insert(record.graph6.clone()) {
                    self.survivors.push(Survivor {
                        graph6: record.graph6.clone(),
                        n: record.n,
                        status: record.status,
                        matched_graph: record.matched_graph.clone(),
                    });
                }
            }
        }
    }

    fn finish(self) -> CensusSummary {
        let found: Vec<(usize, String)> = self
            .survivors
            .iter()
            .filter_map(|s| {
                let name = s.matched_graph.as_ref()?;
                (name.starts_with("cliquesum(") || name.starts_with("pathjoin(")).then(|| (s.n, name.clone()))
            })
            .collect();
        CensusSummary {
            per_n: self.per_n,
            parse_errors: self.parse_errors,
            survivors: self.survivors,
            joins: JoinReport { note: join_note(&found), found },
            two_arc_audit: self.audit,
        }
    }
}

fn join_note(found: &[(usize, String)]) -> String {
    if found.is_empty() {
        return "no joins of complete graphs among the survivors".into();
    }
    let listed: Vec<String> = found.iter().map(|(n, name)| format!("{name} on {n} vertices")).collect();
    format!(
        "found {}. Joining two K4's through t intermediate vertices gives 8+t vertices (vertex identification \
         gives 7), so the K4 join written ⊕^2 with two intermediate vertices has 10 vertices and cannot \
         occur at n <= 9",
        listed.join(", ")
    )
}

/// Summary of an already computed outcome list.
pub fn summarize<'a>(outcomes: impl IntoIterator<Item = &'a CensusOutcome>) -> CensusSummary {
    let mut b = SummaryBuilder::default();
    for o in outcomes {
        b.add(o);
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize) -> (Vec<CensusOutcome>, CensusSummary) {
        let mut out = Vec::new();
        let lines: Vec<_> =
            crate::generate::generate_graphs(n).unwrap().iter().map(|g| Ok(encode_graph6(g).unwrap())).collect();
        let s = census_stream(lines, &CensusOptions::default(), |o| {
            out.push(o.clone());
            Ok(())
        })
        .unwrap();
        (out, s)
    }

    #[test]
    fn six_vertices() {
        let (_, s) = run(6);
        let mut names = s.survivor_names();
        names.sort();
        assert_eq!(names, ["K3,3", "K6"]);
        assert!(s.survivors.iter().all(|x| x.status == Overall::TbSymmetrical));
        assert_eq!(s.per_n[&6].graphs, 112);
        assert!(s.two_arc_audit.counterexamples.is_empty());
    }

    #[test]
    fn parse_errors_are_recorded() {
        let lines = vec![Ok("C~".to_string()), Ok("!!".to_string()), Ok("".to_string())];
        let mut kinds = Vec::new();
        let s = census_stream(lines, &CensusOptions::default(), |o| {
            kinds.push(matches!(o, CensusOutcome::ParseError { .. }));
            Ok(())
        })
        .unwrap();
        assert_eq!(kinds, [false, true]);
        assert_eq!(s.parse_errors, 1);
    }

    #[test]
    fn empty_input() {
        let s = summarize(&[]);
        assert!(s.per_n.is_empty() && s.survivors.is_empty() && s.parse_errors == 0);
    }

    #[test]
    fn duplicates_double_counts_only() {
        let lines = || vec![Ok("C~".to_string())];
        let once = census_stream(lines(), &CensusOptions::default(), |_| Ok(())).unwrap();
        let twice = census_stream(lines().into_iter().chain(lines()), &CensusOptions::default(), |_| Ok(())).unwrap();
        assert_eq!(twice.per_n[&4].graphs, 2 * once.per_n[&4].graphs);
        assert_eq!(twice.survivors, once.survivors);
    }

    #[test]
    fn recognizes_constructions() {
        let q3 = NamedGraph::Hypercube(3).build().unwrap();
        assert_eq!(match_family(&q3), Some(("cube", "Q3".to_string())));
        let j = path_join(&complete(4), 2, &complete(4), 3, 1).unwrap();
        assert_eq!(match_family(&j), Some(("join", "pathjoin(K4,K4,k=1)".to_string())));
        let k = NamedGraph::CompleteBipartite(4, 3).build().unwrap();
        assert_eq!(match_family(&k), Some(("complete-bipartite", "K3,4".to_string())));
    }

    #[test]
    fn degree_screen_is_necessary() {
        for spec in ["petersen", "heawood", "K4", "C6", "K3,3", "Q3", "P3"] {
            let g: Graph = spec.parse::<NamedGraph>().unwrap().build().unwrap();
            let t = arc_transitivity(&g, &automorphism_group(&g).unwrap(), 2).transitive;
            assert!(!t || two_arc_degree_screen(&g), "{spec}");
        }
    }
}
