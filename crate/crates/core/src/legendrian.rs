//! Abstract Legendrian front data and Thurston–Bennequin sums.
//!
//! A front of an embedded graph is summarized by how its crossings and cusps
//! distribute over the graph's strands:
//!
//! * `w_self[e]`: signed self-crossings of edge `e`;
//! * `w_corner[{e,f}]`: signed crossings between adjacent edges `e`, `f`;
//! * `w_cross[{e,f}]`: signed crossings between non-adjacent edges, measured
//!   with both edges oriented by increasing vertex label; a cycle that runs
//!   one of them backwards (σ = −1) sees the negation;
//! * `c_edge[e]`, `c_corner[{e,f}]`: cusps on an edge, or at the shared
//!   vertex of a corner.
//!
//! The tb of a cycle is then `w − c/2`, with `w` and `c` summed over the
//! strands and strand pairs the cycle uses.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycles::{for_each_cycle, Cycle, EdgePairs};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rational::Rational;
use crate::symmetry::{total_tb_coefficient, Level, SymmetryReport};

/// Front data keyed to one graph. Vectors are indexed by edge id, corner id
/// and non-adjacent pair id (see [`EdgePairs`]).
#[derive(Debug, Clone, PartialEq)]
pub struct FrontData<T = i64> {
    edges: Vec<Edge>,
    pairs: EdgePairs,
    pub w_self: Vec<T>,
    pub w_corner: Vec<T>,
    pub w_cross: Vec<T>,
    pub c_edge: Vec<T>,
    pub c_corner: Vec<T>,
}

impl PartialEq for EdgePairs {
    fn eq(&self, other: &Self) -> bool {
        self.corners() == other.corners() && self.non_adjacent() == other.non_adjacent()
    }
}

impl<T: Copy + Default> FrontData<T> {
    pub fn zeros(g: &Graph) -> Self {
        let pairs = EdgePairs::new(g);
        let (m, c, p) = (g.m(), pairs.corners().len(), pairs.non_adjacent().len());
        FrontData {
            edges: g.edges().to_vec(),
            pairs,
            w_self: vec![T::default(); m],
            w_corner: vec![T::default(); c],
            w_cross: vec![T::default(); p],
            c_edge: vec![T::default(); m],
            c_corner: vec![T::default(); c],
        }
    }
}

impl<T> FrontData<T> {
    pub fn pairs(&self) -> &EdgePairs {
        &self.pairs
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.edges != g.edges() {
            return Err(Error::DataMismatch("front data was built for a different edge set".into()));
        }
        Ok(())
    }

    pub fn corner_key(&self, id: usize) -> [Edge; 2] {
        let (e, f) = self.pairs.corners()[id];
        [self.edges[e], self.edges[f]]
    }

    pub fn non_adjacent_key(&self, id: usize) -> [Edge; 2] {
        let (e, f) = self.pairs.non_adjacent()[id];
        [self.edges[e], self.edges[f]]
    }

    fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&(e.0.min(e.1), e.0.max(e.1))).ok()
    }

    /// Id of the non-adjacent pair `{e, f}`.
    pub fn non_adjacent_id(&self, e: Edge, f: Edge) -> Option<usize> {
        self.pairs.non_adjacent_id(self.edge_index(e)?, self.edge_index(f)?)
    }

    pub fn corner_id(&self, e: Edge, f: Edge) -> Option<usize> {
        self.pairs.corner_id(self.edge_index(e)?, self.edge_index(f)?)
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> FrontData<U> {
        FrontData {
            edges: self.edges.clone(),
            pairs: self.pairs.clone(),
            w_self: self.w_self.iter().map(&f).collect(),
            w_corner: self.w_corner.iter().map(&f).collect(),
            w_cross: self.w_cross.iter().map(&f).collect(),
            c_edge: self.c_edge.iter().map(&f).collect(),
            c_corner: self.c_corner.iter().map(&f).collect(),
        }
    }

    fn fields(&self) -> [&Vec<T>; 5] {
        [&self.w_self, &self.w_corner, &self.w_cross, &self.c_edge, &self.c_corner]
    }
}

impl<T: Copy + std::ops::Add<Output = T>> FrontData<T> {
    /// Componentwise sum of two data sets on the same graph.
    pub fn add(&self, other: &FrontData<T>) -> Result<FrontData<T>> {
        if self.edges != other.edges {
            return Err(Error::DataMismatch("cannot add front data of different graphs".into()));
        }
        let zip = |a: &Vec<T>, b: &Vec<T>| a.iter().zip(b).map(|(&x, &y)| x + y).collect();
        Ok(FrontData {
            edges: self.edges.clone(),
            pairs: self.pairs.clone(),
            w_self: zip(&self.w_self, &other.w_self),
            w_corner: zip(&self.w_corner, &other.w_corner),
            w_cross: zip(&self.w_cross, &other.w_cross),
            c_edge: zip(&self.c_edge, &other.c_edge),
            c_corner: zip(&self.c_corner, &other.c_corner),
        })
    }
}

/// tb of one cycle: writhe minus half the cusps.
pub fn cycle_tb<T: Copy + Into<Rational>>(g: &Graph, d: &FrontData<T>, c: &Cycle) -> Result<Rational> {
    d.check_graph(g)?;
    let seq = c.vertices();
    for w in seq {
        g.check_vertex(*w)?;
    }
    let r = seq.len();
    for i in 0..r {
        if !g.has_edge(seq[i], seq[(i + 1) % r]) {
            return Err(Error::Precondition(format!("{c:?} is not a cycle of the graph")));
        }
    }
    Ok(sequence_tb(g, d, seq))
}

/// Evaluates any traversal of a cycle (either direction, any start).
pub(crate) fn sequence_tb<T: Copy + Into<Rational>>(g: &Graph, d: &FrontData<T>, seq: &[usize]) -> Rational {
    let r = seq.len();
    let mut ids = Vec::with_capacity(r);
    let mut dirs = Vec::with_capacity(r);
    for i in 0..r {
        let (a, b) = (seq[i], seq[(i + 1) % r]);
        ids.push(g.edge_id_unchecked(a, b));
        dirs.push(a < b);
    }
    let mut writhe = Rational::ZERO;
    let mut cusps = Rational::ZERO;
    for i in 0..r {
        let e = ids[i];
        let prev = ids[(i + r - 1) % r];
        let corner = d.pairs.corner_id(prev, e).expect("consecutive edges form a corner");
        writhe = writhe + d.w_self[e].into() + d.w_corner[corner].into();
        cusps = cusps + d.c_edge[e].into() + d.c_corner[corner].into();
        for j in i + 2..r {
            if i == 0 && j == r - 1 {
                continue;
            }
            let q = d.pairs.non_adjacent_id(e, ids[j]).expect("non-consecutive edges");
            let w: Rational = d.w_cross[q].into();
            writhe = if dirs[i] == dirs[j] { writhe + w } else { writhe - w };
        }
    }
    writhe - cusps / Rational::from_int(2)
}

/// TB_r for every length present, and their total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TbSpectrum {
    pub per_length: BTreeMap<usize, Rational>,
    pub total: Rational,
}

impl TbSpectrum {
    pub fn get(&self, r: usize) -> Rational {
        self.per_length.get(&r).copied().unwrap_or(Rational::ZERO)
    }
}

pub fn tb_spectrum<T: Copy + Into<Rational>>(g: &Graph, d: &FrontData<T>) -> Result<TbSpectrum> {
    d.check_graph(g)?;
    let mut per_length = BTreeMap::new();
    for_each_cycle(g, None, |c| {
        let tb = sequence_tb(g, d, c);
        let slot = per_length.entry(c.len()).or_insert(Rational::ZERO);
        *slot = *slot + tb;
    });
    let total = per_length.values().copied().sum();
    Ok(TbSpectrum { per_length, total })
}

/// Deterministic pseudo-random data: crossings uniform in `[-bound, bound]`,
/// cusps uniform in `[0, 2·bound]`.
pub fn random_front_data(g: &Graph, seed: u64, bound: u32) -> FrontData<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound as i64;
    let mut d = FrontData::zeros(g);
    for x in d.w_self.iter_mut().chain(&mut d.w_corner).chain(&mut d.w_cross) {
        *x = rng.gen_range(-b..=b);
    }
    for x in d.c_edge.iter_mut().chain(&mut d.c_corner) {
        *x = rng.gen_range(0..=2 * b);
    }
    d
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub r: usize,
    pub s: usize,
    pub level: Level,
    /// Condition (3) was verified for this pair.
    pub certified_full: bool,
    pub rho: Rational,
    /// TB_r
    pub lhs: Rational,
    /// ρ·TB_s
    pub rhs: Rational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TotalCheck {
    pub s: usize,
    pub coefficient: Rational,
    /// total TB
    pub lhs: Rational,
    /// coefficient·TB_s
    pub rhs: Rational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProportionalityCheck {
    pub spectrum: TbSpectrum,
    pub pair_checks: Vec<PairCheck>,
    pub total_checks: Vec<TotalCheck>,
}

impl ProportionalityCheck {
    /// Every comparison backed by a full certificate holds.
    pub fn certified_ok(&self) -> bool {
        self.pair_checks.iter().filter(|c| c.certified_full).all(|c| c.ok) && self.total_checks.iter().all(|c| c.ok)
    }
}

/// Compares TB_r with ρ_{r,s}·TB_s for every pair of `report` carrying a ρ
/// (full, almost, or failing only condition (3)), and total TB with
/// `(1 + Σρ)·TB_s` for each present `s` when the graph is TB-symmetrical.
/// Mismatches are recorded, not raised.
pub fn verify_proportionality<T: Copy + Into<Rational>>(
    g: &Graph,
    d: &FrontData<T>,
    report: &SymmetryReport,
) -> Result<ProportionalityCheck> {
    let spectrum = tb_spectrum(g, d)?;
    let pair_checks = report
        .pairs
        .iter()
        .filter_map(|p| {
            let rho = p.rho?;
            let lhs = spectrum.get(p.r);
            let rhs = rho * spectrum.get(p.s);
            Some(PairCheck {
                r: p.r,
                s: p.s,
                level: p.level,
                certified_full: p.level.is_full(),
                rho,
                lhs,
                rhs,
                ok: lhs == rhs,
            })
        })
        .collect();
    let mut total_checks = Vec::new();
    if report.overall.is_tb_symmetrical() {
        for &s in &report.cycle_lengths {
            let coefficient = total_tb_coefficient(report, s)?;
            let lhs = spectrum.total;
            let rhs = coefficient * spectrum.get(s);
            total_checks.push(TotalCheck { s, coefficient, lhs, rhs, ok: lhs == rhs });
        }
    }
    Ok(ProportionalityCheck { spectrum, pair_checks, total_checks })
}

#[derive(Serialize, Deserialize)]
struct FrontDataJson<T> {
    w_self: Vec<(Edge, T)>,
    w_corner: Vec<(Edge, Edge, T)>,
    w_cross: Vec<(Edge, Edge, T)>,
    c_edge: Vec<(Edge, T)>,
    c_corner: Vec<(Edge, Edge, T)>,
}

impl<T: Copy + Serialize> FrontData<T> {
    pub fn to_json(&self) -> serde_json::Value {
        let singles = |v: &Vec<T>| self.edges.iter().zip(v).map(|(&e, &x)| (e, x)).collect();
        let corners = |v: &Vec<T>| {
            v.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let [e, f] = self.corner_key(i);
                    (e, f, x)
                })
                .collect()
        };
        let cross = self
            .w_cross
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let [e, f] = self.non_adjacent_key(i);
                (e, f, x)
            })
            .collect();
        serde_json::to_value(FrontDataJson {
            w_self: singles(&self.w_self),
            w_corner: corners(&self.w_corner),
            w_cross: cross,
            c_edge: singles(&self.c_edge),
            c_corner: corners(&self.c_corner),
        })
        .expect("front data serializes")
    }
}

impl FrontData<i64> {
    /// Parses the JSON form, requiring the key sets to match `g` exactly and
    /// cusp counts to be nonnegative.
    pub fn from_json(g: &Graph, value: &serde_json::Value) -> Result<Self> {
        let raw: FrontDataJson<i64> = serde_json::from_value(value.clone())
            .map_err(|e| Error::DataMismatch(format!("malformed front data: {e}")))?;
        let mut d = FrontData::<i64>::zeros(g);
        let norm = |(u, v): Edge| (u.min(v), u.max(v));

        fn fill<K: Copy + std::fmt::Debug>(
            name: &str,
            slots: &mut [i64],
            entries: Vec<(K, i64)>,
            index: impl Fn(K) -> Option<usize>,
        ) -> Result<()> {
            let mut seen = vec![false; slots.len()];
            for (k, x) in entries {
                let i = index(k).ok_or_else(|| Error::DataMismatch(format!("{name}: unknown key {k:?}")))?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::DataMismatch(format!("{name}: duplicate key {k:?}")));
                }
                slots[i] = x;
            }
            if let Some(i) = seen.iter().position(|s| !s) {
                return Err(Error::DataMismatch(format!("{name}: missing entry #{i}")));
            }
            Ok(())
        }

        let edges = d.edges.clone();
        let pairs = d.pairs.clone();
        let edge_ix = |e: Edge| edges.binary_search(&norm(e)).ok();
        let corner_ix = |(e, f): (Edge, Edge)| pairs.corner_id(edge_ix(e)?, edge_ix(f)?);
        let cross_ix = |(e, f): (Edge, Edge)| pairs.non_adjacent_id(edge_ix(e)?, edge_ix(f)?);
        let triples = |v: Vec<(Edge, Edge, i64)>| v.into_iter().map(|(e, f, x)| ((e, f), x)).collect();

        fill("w_self", &mut d.w_self, raw.w_self, edge_ix)?;
        fill("w_corner", &mut d.w_corner, triples(raw.w_corner), corner_ix)?;
        fill("w_cross", &mut d.w_cross, triples(raw.w_cross), cross_ix)?;
        fill("c_edge", &mut d.c_edge, raw.c_edge, edge_ix)?;
        fill("c_corner", &mut d.c_corner, triples(raw.c_corner), corner_ix)?;
        if let Some(x) = d.c_edge.iter().chain(&d.c_corner).find(|&&x| x < 0) {
            return Err(Error::DataMismatch(format!("negative cusp count {x}")));
        }
        Ok(d)
    }
}

impl<T: Copy + Into<Rational>> FrontData<T> {
    /// All entries as rationals.
    pub fn to_rational(&self) -> FrontData<Rational> {
        self.map(|&x| x.into())
    }
}

impl FrontData<Rational> {
    /// Integer data, if every entry is an integer.
    pub fn to_integral(&self) -> Option<FrontData<i64>> {
        if self.fields().iter().all(|v| v.iter().all(|x| x.is_integer())) {
            Some(self.map(|x| x.numer() as i64))
        } else {
            None
        }
    }

    pub fn cusps_nonnegative(&self) -> bool {
        self.c_edge.iter().chain(&self.c_corner).all(|x| !x.is_negative())
    }
}
