//! Almost- and full (r,s)-TB-symmetry checks with exact ρ values.
//!
//! For distinct lengths `r, s` a graph is almost-(r,s)-TB-symmetrical when a
//! single nonnegative ρ satisfies `count_r(x) = ρ·count_s(x)` for every edge
//! and every corner `x`; it is (r,s)-TB-symmetrical when additionally
//! `n⁺_r(q) − n⁻_r(q) = ρ·(n⁺_s(q) − n⁻_s(q))` for every non-adjacent edge
//! pair `q`. ρ is taken from the first edge (in edge-id order) that lies on
//! an s-cycle, and every other object must agree with it.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycles::IncidenceProfile;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::graph6::{encode_graph6, MAX_VERTICES};
use crate::rational::Rational;

/// Outcome of checking one ordered length pair `(r, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    /// No r-cycles and no s-cycles; ρ = 0 by convention.
    #[serde(rename = "trivial-no-cycles")]
    TrivialNoCycles,
    /// Conditions (1) and (2) hold; condition (3) was not evaluated.
    #[serde(rename = "almost")]
    Almost,
    #[serde(rename = "full")]
    Full,
    #[serde(rename = "fail-condition-1")]
    FailCondition1,
    #[serde(rename = "fail-condition-2")]
    FailCondition2,
    /// Conditions (1) and (2) hold but (3) does not.
    #[serde(rename = "fail-condition-3")]
    FailCondition3,
}

impl Level {
    /// Conditions (1) and (2) are known to hold.
    pub fn is_almost(self) -> bool {
        matches!(self, Level::TrivialNoCycles | Level::Almost | Level::Full | Level::FailCondition3)
    }

    pub fn is_full(self) -> bool {
        matches!(self, Level::TrivialNoCycles | Level::Full)
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Level::FailCondition1 | Level::FailCondition2 | Level::FailCondition3)
    }
}

/// The first object violating proportionality, with its counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Edge { edge: Edge, r_count: u64, s_count: u64 },
    Corner { edges: [Edge; 2], r_count: u64, s_count: u64 },
    NonAdjacentPair { edges: [Edge; 2], r_plus: u64, r_minus: u64, s_plus: u64, s_minus: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairStatus {
    pub r: usize,
    pub s: usize,
    pub level: Level,
    /// Present whenever conditions (1) and (2) hold, including
    /// `FailCondition3`, where it is the ρ certified by (1) and (2).
    pub rho: Option<Rational>,
    pub witness: Option<Witness>,
}

/// Checks one ordered pair. `want_full` requires the oriented tables of
/// `profile` to have been computed.
pub fn check_pair(profile: &IncidenceProfile, r: usize, s: usize, want_full: bool) -> Result<PairStatus> {
    if r == s || r < 3 || s < 3 {
        return Err(Error::Precondition(format!("need distinct lengths r, s >= 3, got r={r}, s={s}")));
    }
    if want_full && !profile.has_oriented() {
        return Err(Error::Precondition("full check needs the oriented-pair tables".into()));
    }
    let status = |level, rho, witness| PairStatus { r, s, level, rho, witness };
    if profile.cycle_count(r) == 0 && profile.cycle_count(s) == 0 {
        return Ok(status(Level::TrivialNoCycles, Some(Rational::ZERO), None));
    }
    let m = profile.graph_edges().len();
    let corners = profile.pairs().corners();
    let (num, den) = determine_ratio(profile, r, s, m, corners.len());
    let agrees = |rc: u64, sc: u64| rc as u128 * den as u128 == num as u128 * sc as u128;
    let rho = Rational::new(num as i128, den as i128);

    let edges = profile.graph_edges();
    for (e, &edge) in edges.iter().enumerate() {
        let (rc, sc) = (profile.edge_count(r, e), profile.edge_count(s, e));
        if !agrees(rc, sc) {
            let w = Witness::Edge { edge, r_count: rc, s_count: sc };
            return Ok(status(Level::FailCondition1, None, Some(w)));
        }
    }
    for (c, &(e, f)) in corners.iter().enumerate() {
        let (rc, sc) = (profile.corner_count(r, c), profile.corner_count(s, c));
        if !agrees(rc, sc) {
            let w = Witness::Corner { edges: [edges[e], edges[f]], r_count: rc, s_count: sc };
            return Ok(status(Level::FailCondition2, None, Some(w)));
        }
    }
    if !want_full {
        return Ok(status(Level::Almost, Some(rho), None));
    }
    match condition_three(profile, r, s, num, den) {
        None => Ok(status(Level::Full, Some(rho), None)),
        Some(w) => Ok(status(Level::FailCondition3, Some(rho), Some(w))),
    }
}

/// `(count_r, count_s)` at the first edge on an s-cycle, else the first such
/// corner, else `(0, 1)`.
fn determine_ratio(profile: &IncidenceProfile, r: usize, s: usize, m: usize, corners: usize) -> (u64, u64) {
    if let Some(e) = (0..m).find(|&e| profile.edge_count(s, e) != 0) {
        return reduce(profile.edge_count(r, e), profile.edge_count(s, e));
    }
    if let Some(c) = (0..corners).find(|&c| profile.corner_count(s, c) != 0) {
        return reduce(profile.corner_count(r, c), profile.corner_count(s, c));
    }
    (0, 1)
}

fn reduce(a: u64, b: u64) -> (u64, u64) {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(a, b).max(1);
    (a / g, b / g)
}

fn condition_three(profile: &IncidenceProfile, r: usize, s: usize, num: u64, den: u64) -> Option<Witness> {
    let edges = profile.graph_edges();
    for (q, &(e, f)) in profile.pairs().non_adjacent().iter().enumerate() {
        let (rp, rm) = profile.oriented_counts(r, q);
        let (sp, sm) = profile.oriented_counts(s, q);
        let lhs = (rp as i128 - rm as i128) * den as i128;
        let rhs = (sp as i128 - sm as i128) * num as i128;
        if lhs != rhs {
            return Some(Witness::NonAdjacentPair {
                edges: [edges[e], edges[f]],
                r_plus: rp,
                r_minus: rm,
                s_plus: sp,
                s_minus: sm,
            });
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Overall {
    #[serde(rename = "tb-symmetrical")]
    TbSymmetrical,
    #[serde(rename = "almost-tb-symmetrical-only")]
    AlmostOnly,
    #[serde(rename = "neither")]
    Neither,
    /// At most one distinct cycle length; TB-symmetrical.
    #[serde(rename = "trivial")]
    Trivial,
}

impl Overall {
    pub fn is_tb_symmetrical(self) -> bool {
        matches!(self, Overall::TbSymmetrical | Overall::Trivial)
    }

    pub fn is_almost(self) -> bool {
        self != Overall::Neither
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Overall::TbSymmetrical => "tb-symmetrical",
            Overall::AlmostOnly => "almost-tb-symmetrical-only",
            Overall::Neither => "neither",
            Overall::Trivial => "trivial",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Evaluate condition (3) for pairs passing (1) and (2).
    pub full_check: bool,
    /// Stop at the first pair that fails (1) or (2); the report then lists
    /// only the pairs examined so far.
    pub early_exit: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { full_check: true, early_exit: false }
    }
}

/// TB-symmetry classification of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub graph6: Option<String>,
    pub n: usize,
    pub m: usize,
    pub cycle_lengths: Vec<usize>,
    pub cycle_spectrum: BTreeMap<usize, u64>,
    pub overall: Overall,
    pub full_checked: bool,
    /// Ordered pairs of distinct present lengths, sorted by `(r, s)`.
    pub pairs: Vec<PairStatus>,
    /// `[r, s0, ρ_{r,s0}]` for each present `r` other than the smallest
    /// length `s0`, whenever that ρ is certified.
    pub rho: Vec<(usize, usize, Rational)>,
}

impl SymmetryReport {
    pub fn pair(&self, r: usize, s: usize) -> Option<&PairStatus> {
        self.pairs.iter().find(|p| p.r == r && p.s == s)
    }

    pub fn cycle_count(&self, r: usize) -> u64 {
        self.cycle_spectrum.get(&r).copied().unwrap_or(0)
    }

    /// ρ_{r,s} from either orientation (conditions (1)–(2) level). Absent
    /// lengths follow the no-r-cycles rule: ρ_{r,s} = 0 when `c_r = 0`.
    pub fn rho(&self, r: usize, s: usize) -> Option<Rational> {
        self.rho_where(r, s, Level::is_almost)
    }

    /// ρ_{r,s} certified at the full level by one of the two orientations.
    pub fn full_rho(&self, r: usize, s: usize) -> Option<Rational> {
        self.rho_where(r, s, Level::is_full)
    }

    fn rho_where(&self, r: usize, s: usize, ok: fn(Level) -> bool) -> Option<Rational> {
        if r == s {
            return None;
        }
        if self.cycle_count(r) == 0 {
            return Some(Rational::ZERO);
        }
        if self.cycle_count(s) == 0 {
            return None;
        }
        if let Some(p) = self.pair(r, s).filter(|p| ok(p.level)) {
            return p.rho;
        }
        self.pair(s, r).filter(|p| ok(p.level)).and_then(|p| p.rho).filter(|x| !x.is_zero()).map(|x| x.recip())
    }
}

pub fn classify(g: &Graph) -> SymmetryReport {
    classify_with(g, ClassifyOptions::default())
}

pub fn classify_with(g: &Graph, opts: ClassifyOptions) -> SymmetryReport {
    let mut profile = IncidenceProfile::without_oriented(g);
    classify_profile(g, &mut profile, opts)
}

/// Classification from a profile built for `g`; fills the oriented tables
/// only when some pair needs condition (3).
pub fn classify_profile(g: &Graph, profile: &mut IncidenceProfile, opts: ClassifyOptions) -> SymmetryReport {
    let lengths = profile.lengths();
    let mut pairs = Vec::new();
    let mut aborted = false;
    'outer: for &r in &lengths {
        for &s in &lengths {
            if r == s {
                continue;
            }
            let st = check_pair(profile, r, s, false).expect("valid lengths");
            let failed = st.level.is_failure();
            pairs.push(st);
            if failed && opts.early_exit {
                aborted = true;
                break 'outer;
            }
        }
    }
    let need_full = opts.full_check && !aborted && pairs.iter().any(|p| p.level == Level::Almost);
    if need_full {
        profile.compute_oriented(g);
        for p in pairs.iter_mut().filter(|p| p.level == Level::Almost) {
            *p = check_pair(profile, p.r, p.s, true).expect("valid lengths");
        }
    }

    let unordered_ok = |ok: fn(Level) -> bool| {
        lengths.iter().enumerate().all(|(i, &r)| {
            lengths[i + 1..].iter().all(|&s| {
                let level_of = |a, b| pairs.iter().find(|p| p.r == a && p.s == b).map(|p| p.level);
                level_of(r, s).is_some_and(ok) || level_of(s, r).is_some_and(ok)
            })
        })
    };
    let overall = if lengths.len() <= 1 {
        Overall::Trivial
    } else if aborted || !unordered_ok(Level::is_almost) {
        Overall::Neither
    } else if opts.full_check && unordered_ok(Level::is_full) {
        Overall::TbSymmetrical
    } else {
        Overall::AlmostOnly
    };

    let mut report = SymmetryReport {
        graph6: (g.n() <= MAX_VERTICES).then(|| encode_graph6(g).expect("size checked")),
        n: g.n(),
        m: g.m(),
        cycle_lengths: lengths.clone(),
        cycle_spectrum: profile.cycle_counts(),
        overall,
        full_checked: opts.full_check && !aborted,
        pairs,
        rho: Vec::new(),
    };
    if let Some(&s0) = lengths.first() {
        report.rho = lengths[1..].iter().filter_map(|&r| report.rho(r, s0).map(|x| (r, s0, x))).collect();
    }
    report
}

/// Families with closed-form ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormFamily {
    Complete(usize),
    Bipartite(usize, usize),
}

fn factorial(k: usize) -> Rational {
    (1..=k as i128).fold(Rational::ONE, |acc, i| acc * Rational::from_int(i))
}

/// ρ_{r,s} for `K_n` or `K_{m,n}` from the factorial formulas
/// `ρ_{r,s}(K_n) = (n−s)!/(n−r)!` and
/// `ρ_{2a,2b}(K_{m,n}) = (n−b)!(m−b)!/((n−a)!(m−a)!)`.
/// `r` and `s` are actual cycle lengths (even for the bipartite family).
pub fn rho_closed_form(family: ClosedFormFamily, r: usize, s: usize) -> Result<Rational> {
    if r == s {
        return Err(Error::InvalidParameter(format!("lengths must differ, got {r} twice")));
    }
    match family {
        ClosedFormFamily::Complete(n) => {
            if n > 30 {
                return Err(Error::InvalidParameter(format!("K_{n} is outside the supported range")));
            }
            for x in [r, s] {
                if !(3..=n).contains(&x) {
                    return Err(Error::InvalidParameter(format!("cycle length {x} outside 3..={n} for K_{n}")));
                }
            }
            Ok(factorial(n - s) / factorial(n - r))
        }
        ClosedFormFamily::Bipartite(a, b) => {
            if a.max(b) > 30 {
                return Err(Error::InvalidParameter(format!("K_{{{a},{b}}} is outside the supported range")));
            }
            for x in [r, s] {
                if x % 2 != 0 {
                    return Err(Error::InvalidParameter(format!("K_{{{a},{b}}} has no odd cycles (length {x})")));
                }
                if !(2..=a.min(b)).contains(&(x / 2)) {
                    return Err(Error::InvalidParameter(format!(
                        "cycle length {x} outside 4..={} for K_{{{a},{b}}}",
                        2 * a.min(b)
                    )));
                }
            }
            let (hr, hs) = (r / 2, s / 2);
            Ok(factorial(b - hs) * factorial(a - hs) / (factorial(b - hr) * factorial(a - hr)))
        }
    }
}

/// `1 + Σ_{r≠s} ρ_{r,s}`, the factor relating total TB to TB_s.
pub fn total_tb_coefficient(report: &SymmetryReport, s: usize) -> Result<Rational> {
    if !report.overall.is_tb_symmetrical() {
        return Err(Error::Precondition(format!("graph is {}, not TB-symmetrical", report.overall.as_str())));
    }
    if report.cycle_count(s) == 0 {
        return Err(Error::Precondition(format!("graph has no {s}-cycle")));
    }
    let mut total = Rational::ONE;
    for &r in report.cycle_lengths.iter().filter(|&&r| r != s) {
        total = total
            + report.full_rho(r, s).ok_or_else(|| Error::Precondition(format!("ρ_{{{r},{s}}} is not certified")))?;
    }
    Ok(total)
}
