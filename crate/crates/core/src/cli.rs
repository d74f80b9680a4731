//! Command-line front end. [`run`] writes to caller-supplied streams so the
//! binary and the tests share one code path.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};

use anyhow::{anyhow, Context};
use clap::{error::ErrorKind, Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::automorphism::transitivity_profile;
use crate::census::{census_generated, census_stream, CensusOptions, CensusOutcome, CensusSummary};
use crate::cycles::Cycle;
use crate::fit::{fit_front_data, FitOutcome};
use crate::graph::Graph;
use crate::graph6::{encode_graph6, parse_graph6};
use crate::legendrian::{random_front_data, verify_proportionality, FrontData};
use crate::named::NamedGraph;
use crate::ops::{add_pendant, clique_sum_vertex, disjoint_union, path_join};
use crate::rational::Rational;
use crate::symmetry::{classify, classify_with, ClassifyOptions, SymmetryReport};

#[derive(Parser, Debug)]
#[command(name = "tbsym", version, about = "Thurston–Bennequin symmetry of finite simple graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph.
    Named {
        /// e.g. K5, K3,3, K2,2,2, C7, P4, Q3, O3, petersen, heawood
        spec: String,
        /// Print only the graph6 string.
        #[arg(long)]
        g6: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide (almost-)TB-symmetry and compute ρ.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        /// Skip condition (3); report the almost level only.
        #[arg(long)]
        almost_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Census over graph6 input or internally generated graphs.
    Census {
        #[arg(long = "in", value_name = "FILE", conflicts_with = "generate", required_unless_present = "generate")]
        input: Option<String>,
        /// Generate all connected graphs on 1..=N vertices.
        #[arg(long, value_name = "N")]
        generate: Option<usize>,
        #[arg(long, default_value_t = 9)]
        nmax: usize,
        #[arg(long)]
        workers: Option<usize>,
        /// Also emit graphs with a single cycle length.
        #[arg(long)]
        keep_trivial: bool,
        #[arg(long)]
        almost_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// s-arc transitivity for s = 0..=smax.
    Arcs {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 3)]
        smax: usize,
        #[arg(long)]
        json: bool,
    },
    /// TB spectrum of front data and the proportionality checks.
    Tb {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, conflicts_with_all = ["random_seed", "bound"], required_unless_present = "random_seed")]
        data: Option<String>,
        #[arg(long, requires = "bound")]
        random_seed: Option<u64>,
        #[arg(long, requires = "random_seed")]
        bound: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Solve for front data realizing per-cycle tb targets.
    Fit {
        #[command(flatten)]
        graph: GraphArg,
        /// JSON list of {"cycle": [v, ...], "tb": "p/q"}
        #[arg(long)]
        targets: String,
        #[arg(long)]
        json: bool,
    },
    /// Graph operations.
    Ops {
        #[command(subcommand)]
        op: OpCommand,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphArg {
    /// Named graph spec, or `g6:<string>`.
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    g6: Option<String>,
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    /// Attach a pendant vertex at --vertex.
    Pendant {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        json: bool,
    },
    Union {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        json: bool,
    },
    /// Identify --v1 of the left graph with --v2 of the right graph.
    Cliquesum {
        #[arg(long)]
        left: String,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        right: String,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        json: bool,
    },
    /// Connect --v1 and --v2 by a path through --k new vertices.
    Pathjoin {
        #[arg(long)]
        left: String,
        #[arg(long)]
        v1: usize,
        #[arg(long)]
        right: String,
        #[arg(long)]
        v2: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `args` (including the program name) and captures both streams.
pub fn dispatch<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(args, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        Command::Named { spec, g6, json } => {
            let named: NamedGraph = spec.parse()?;
            let g = named.build()?;
            if g6 && !json {
                writeln!(out, "{}", encode_graph6(&g)?)?;
            } else {
                emit_graph(out, &named.spec(), &g, json)?;
            }
        }
        Command::Classify { graph, almost_only, json } => {
            let (label, g) = graph.resolve()?;
            let opts = ClassifyOptions { full_check: !almost_only, early_exit: false };
            let mut report = classify_with(&g, opts);
            report.graph6 = Some(encode_graph6(&g)?);
            if json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                out.write_all(render_report(&label, &report).as_bytes())?;
            }
        }
        Command::Census { input, generate, nmax, workers, keep_trivial, almost_only, json } => {
            let opts = CensusOptions {
                skip_single_cycle_length: !keep_trivial,
                full_check: !almost_only,
                n_max: nmax,
                workers,
                ..CensusOptions::default()
            };
            let mut emit = |o: &CensusOutcome| -> crate::Result<()> {
                if json {
                    if let Some(line) = outcome_line(o) {
                        writeln!(out, "{line}").map_err(|e| crate::Error::InvalidParameter(e.to_string()))?;
                    }
                }
                Ok(())
            };
            let summary = match (input, generate) {
                (Some(path), _) => {
                    let f = File::open(&path).with_context(|| format!("cannot open {path}"))?;
                    census_stream(BufReader::new(f).lines(), &opts, &mut emit)?
                }
                (None, Some(n)) => census_generated(n, &opts, &mut emit)?,
                (None, None) => unreachable!("clap enforces an input"),
            };
            if json {
                writeln!(out, "{}", json!({ "summary": summary }))?;
            } else {
                out.write_all(render_summary(&summary).as_bytes())?;
            }
            return Ok(if summary.parse_errors > 0 { 2 } else { 0 });
        }
        Command::Arcs { graph, smax, json } => {
            let (label, g) = graph.resolve()?;
            let profile = transitivity_profile(&g, smax)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&profile)?)?;
            } else {
                writeln!(out, "{label}: group order {}", profile.group_order)?;
                writeln!(out, "vertex-transitive: {}", profile.vertex_transitive)?;
                writeln!(out, "edge-transitive: {}", profile.edge_transitive)?;
                for (s, t) in &profile.per_s {
                    let note = if profile.vacuous.contains(s) { " (no s-arcs)" } else { "" };
                    writeln!(out, "{s}-arc transitive: {t}{note}")?;
                }
            }
        }
        Command::Tb { graph, data, random_seed, bound, json } => {
            let (label, g) = graph.resolve()?;
            let d = match (data, random_seed, bound) {
                (Some(path), _, _) => {
                    let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read {path}"))?;
                    let value: serde_json::Value = serde_json::from_str(&text).context("front data is not JSON")?;
                    FrontData::from_json(&g, &value)?
                }
                (None, Some(seed), Some(b)) => random_front_data(&g, seed, b),
                _ => return Err(anyhow!("need --data or --random-seed with --bound")),
            };
            let report = classify(&g);
            let check = verify_proportionality(&g, &d, &report)?;
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "per_length": check.spectrum.per_length,
                        "total": check.spectrum.total,
                        "pair_checks": check.pair_checks,
                        "total_checks": check.total_checks,
                        "certified_ok": check.certified_ok(),
                    })
                )?;
            } else {
                writeln!(out, "{label}: overall {}", report.overall.as_str())?;
                for (r, v) in &check.spectrum.per_length {
                    writeln!(out, "TB_{r} = {v}")?;
                }
                writeln!(out, "total = {}", check.spectrum.total)?;
                for c in &check.pair_checks {
                    let tag = if c.certified_full { "full" } else { "almost" };
                    let verdict = if c.ok { "ok" } else { "MISMATCH" };
                    writeln!(out, "TB_{} = {}·TB_{} [{tag}]: {} vs {} {verdict}", c.r, c.rho, c.s, c.lhs, c.rhs)?;
                }
                for c in &check.total_checks {
                    let verdict = if c.ok { "ok" } else { "MISMATCH" };
                    writeln!(out, "total = {}·TB_{}: {} vs {} {verdict}", c.coefficient, c.s, c.lhs, c.rhs)?;
                }
            }
        }
        Command::Fit { graph, targets, json } => {
            let (label, g) = graph.resolve()?;
            let text = std::fs::read_to_string(&targets).with_context(|| format!("cannot read {targets}"))?;
            let map = parse_targets(&g, &text)?;
            let outcome = fit_front_data(&g, &map)?;
            if json {
                writeln!(out, "{}", outcome.to_json())?;
            } else {
                match &outcome {
                    FitOutcome::Feasible { integral, cusps_nonnegative, .. } => writeln!(
                        out,
                        "{label}: feasible (integral: {integral}, cusps nonnegative: {cusps_nonnegative})"
                    )?,
                    FitOutcome::Infeasible { certificate, residual } => {
                        writeln!(out, "{label}: infeasible; certificate combination evaluates to {residual}")?;
                        for (c, y) in certificate {
                            writeln!(out, "  {y} × {c:?}")?;
                        }
                    }
                }
            }
        }
        Command::Ops { op } => {
            let (label, g, json) = match op {
                OpCommand::Pendant { graph, vertex, json } => {
                    let (l, g) = resolve_spec(&graph)?;
                    (format!("pendant({l},{vertex})"), add_pendant(&g, vertex)?, json)
                }
                OpCommand::Union { left, right, json } => {
                    let ((a, g1), (b, g2)) = (resolve_spec(&left)?, resolve_spec(&right)?);
                    (format!("union({a},{b})"), disjoint_union(&g1, &g2), json)
                }
                OpCommand::Cliquesum { left, v1, right, v2, json } => {
                    let ((a, g1), (b, g2)) = (resolve_spec(&left)?, resolve_spec(&right)?);
                    (format!("cliquesum({a},{b})"), clique_sum_vertex(&g1, v1, &g2, v2)?, json)
                }
                OpCommand::Pathjoin { left, v1, right, v2, k, json } => {
                    let ((a, g1), (b, g2)) = (resolve_spec(&left)?, resolve_spec(&right)?);
                    (format!("pathjoin({a},{b},k={k})"), path_join(&g1, v1, &g2, v2, k)?, json)
                }
            };
            emit_graph(out, &label, &g, json)?;
        }
    }
    Ok(0)
}

impl GraphArg {
    fn resolve(&self) -> anyhow::Result<(String, Graph)> {
        match (&self.graph, &self.g6) {
            (Some(spec), _) => resolve_spec(spec),
            (None, Some(text)) => Ok((text.clone(), parse_graph6(text.as_bytes())?)),
            (None, None) => unreachable!("clap enforces a graph"),
        }
    }
}

fn resolve_spec(spec: &str) -> anyhow::Result<(String, Graph)> {
    if let Some(text) = spec.strip_prefix("g6:") {
        return Ok((text.to_string(), parse_graph6(text.as_bytes())?));
    }
    let named: NamedGraph = spec.parse()?;
    Ok((named.spec(), named.build()?))
}

#[derive(Deserialize)]
struct TargetEntry {
    cycle: Vec<usize>,
    tb: Rational,
}

fn parse_targets(g: &Graph, text: &str) -> anyhow::Result<BTreeMap<Cycle, Rational>> {
    let entries: Vec<TargetEntry> = serde_json::from_str(text).context("targets must be a JSON list")?;
    let mut map = BTreeMap::new();
    for e in entries {
        let c = Cycle::new(g, &e.cycle).map_err(|_| crate::Error::UnknownCycle(format!("{:?}", e.cycle)))?;
        if map.insert(c, e.tb).is_some() {
            return Err(anyhow!("cycle {:?} listed twice", e.cycle));
        }
    }
    Ok(map)
}

fn emit_graph(out: &mut dyn Write, label: &str, g: &Graph, json: bool) -> anyhow::Result<()> {
    let report = classify(g);
    let graph6 = encode_graph6(g)?;
    if json {
        let v = json!({
            "graph": label,
            "graph6": graph6,
            "n": g.n(),
            "m": g.m(),
            "edges": g.edges(),
            "cycle_spectrum": report.cycle_spectrum,
            "overall": report.overall,
            "rho": report.rho,
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{label}: n={} m={} graph6={graph6}", g.n(), g.m())?;
        writeln!(out, "cycles: {}", spectrum_text(&report))?;
        writeln!(out, "overall: {}", report.overall.as_str())?;
    }
    Ok(())
}

fn spectrum_text(report: &SymmetryReport) -> String {
    if report.cycle_spectrum.is_empty() {
        return "none".into();
    }
    let parts: Vec<String> = report.cycle_spectrum.iter().map(|(r, c)| format!("{r}:{c}")).collect();
    parts.join(" ")
}

fn render_report(label: &str, report: &SymmetryReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{label}: n={} m={}", report.n, report.m);
    let _ = writeln!(s, "cycles: {}", spectrum_text(report));
    let _ = writeln!(s, "overall: {}", report.overall.as_str());
    if !report.pairs.is_empty() {
        let _ = writeln!(s, "{:>3} {:>3}  {:<18} rho", "r", "s", "level");
        for p in &report.pairs {
            let rho = p.rho.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            let level = serde_json::to_value(p.level).ok().and_then(|v| v.as_str().map(String::from));
            let _ = writeln!(s, "{:>3} {:>3}  {:<18} {rho}", p.r, p.s, level.unwrap_or_default());
        }
    }
    if !report.rho.is_empty() {
        let parts: Vec<String> = report.rho.iter().map(|(r, s0, x)| format!("rho_{r},{s0}={x}")).collect();
        let _ = writeln!(s, "{}", parts.join(" "));
    }
    s
}

fn outcome_line(o: &CensusOutcome) -> Option<String> {
    match o {
        CensusOutcome::Record { record, .. } => serde_json::to_string(record).ok(),
        CensusOutcome::ParseError { line, message } => {
            Some(json!({ "parse_error": { "line": line, "message": message } }).to_string())
        }
        CensusOutcome::Rejected { .. } => None,
    }
}

fn render_summary(s: &CensusSummary) -> String {
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{:>2} {:>8} {:>12} {:>10} {:>8} {:>5} {:>11} {:>8}",
        "n", "graphs", "disconnected", "min-deg<2", "trivial", "full", "almost-only", "fail"
    );
    for (n, c) in &s.per_n {
        let _ = writeln!(
            t,
            "{n:>2} {:>8} {:>12} {:>10} {:>8} {:>5} {:>11} {:>8}",
            c.graphs, c.disconnected, c.min_degree_below_2, c.trivial, c.full, c.almost_only, c.fail
        );
    }
    let _ = writeln!(t, "survivors:");
    for v in &s.survivors {
        let name = v.matched_graph.as_deref().unwrap_or("-");
        let _ = writeln!(t, "  {:<10} n={} {:<26} {name}", v.graph6, v.n, v.status.as_str());
    }
    let _ = writeln!(t, "joins: {}", s.joins.note);
    let a = &s.two_arc_audit;
    let _ = writeln!(
        t,
        "2-arc audit: {} examined, {} 2-arc transitive, {} skipped, {} counterexamples",
        a.examined,
        a.two_arc_transitive,
        a.skipped,
        a.counterexamples.len()
    );
    if s.parse_errors > 0 {
        let _ = writeln!(t, "parse errors: {}", s.parse_errors);
    }
    t
}
