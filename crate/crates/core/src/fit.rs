//! Realizing prescribed per-cycle tb values by front data.
//!
//! Each cycle's tb is linear in the front data, so prescribing tb on a set
//! of cycles is a linear system over ℚ. It is solved exactly; when it has no
//! solution a certificate `y` is returned with `yA = 0` and `y·b ≠ 0`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycles::{Cycle, EdgePairs};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::legendrian::FrontData;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum FitOutcome {
    Feasible {
        data: FrontData<Rational>,
        /// Every entry is an integer.
        integral: bool,
        cusps_nonnegative: bool,
    },
    Infeasible {
        /// Nonzero multipliers, scaled to coprime integers.
        certificate: Vec<(Cycle, Rational)>,
        /// `Σ y_c · target_c`, never zero.
        residual: Rational,
    },
}

impl FitOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FitOutcome::Feasible { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            FitOutcome::Feasible { data, integral, cusps_nonnegative } => serde_json::json!({
                "feasible": true,
                "integral": integral,
                "cusps_nonnegative": cusps_nonnegative,
                "data": data.to_json(),
            }),
            FitOutcome::Infeasible { certificate, residual } => {
                #[derive(Serialize)]
                struct Entry<'a> {
                    cycle: &'a Cycle,
                    multiplier: Rational,
                }
                let cert: Vec<Entry> = certificate.iter().map(|(c, y)| Entry { cycle: c, multiplier: *y }).collect();
                serde_json::json!({
                    "feasible": false,
                    "certificate": cert,
                    "residual": residual,
                })
            }
        }
    }
}

/// Column layout: writhe unknowns first, then cusps, so that free cusp
/// variables default to zero.
struct Columns {
    m: usize,
    corners: usize,
    cross: usize,
}

impl Columns {
    fn w_self(&self, e: usize) -> usize {
        e
    }
    fn w_corner(&self, c: usize) -> usize {
        self.m + c
    }
    fn w_cross(&self, q: usize) -> usize {
        self.m + self.corners + q
    }
    fn c_edge(&self, e: usize) -> usize {
        self.m + self.corners + self.cross + e
    }
    fn c_corner(&self, c: usize) -> usize {
        2 * self.m + self.corners + self.cross + c
    }
    fn len(&self) -> usize {
        2 * (self.m + self.corners) + self.cross
    }
}

/// Coefficient row of one cycle's tb.
fn cycle_row(g: &Graph, pairs: &EdgePairs, cols: &Columns, seq: &[usize]) -> Vec<Rational> {
    let half = Rational::new(1, 2);
    let mut row = vec![Rational::ZERO; cols.len()];
    let r = seq.len();
    let ids: Vec<usize> = (0..r).map(|i| g.edge_id_unchecked(seq[i], seq[(i + 1) % r])).collect();
    let dirs: Vec<bool> = (0..r).map(|i| seq[i] < seq[(i + 1) % r]).collect();
    for i in 0..r {
        let e = ids[i];
        let corner = pairs.corner_id(ids[(i + r - 1) % r], e).expect("corner");
        row[cols.w_self(e)] = row[cols.w_self(e)] + Rational::ONE;
        row[cols.w_corner(corner)] = row[cols.w_corner(corner)] + Rational::ONE;
        row[cols.c_edge(e)] = row[cols.c_edge(e)] - half;
        row[cols.c_corner(corner)] = row[cols.c_corner(corner)] - half;
        for j in i + 2..r {
            if i == 0 && j == r - 1 {
                continue;
            }
            let q = cols.w_cross(pairs.non_adjacent_id(e, ids[j]).expect("pair"));
            let s = if dirs[i] == dirs[j] { Rational::ONE } else { -Rational::ONE };
            row[q] = row[q] + s;
        }
    }
    row
}

/// Finds front data with `tb(c) = targets[c]` for every listed cycle, or a
/// certificate that none exists. Cycles may be given in any rotation or
/// direction.
pub fn fit_front_data(g: &Graph, targets: &BTreeMap<Cycle, Rational>) -> Result<FitOutcome> {
    let pairs = EdgePairs::new(g);
    let cols = Columns { m: g.m(), corners: pairs.corners().len(), cross: pairs.non_adjacent().len() };
    let width = cols.len();

    let mut cycles = Vec::with_capacity(targets.len());
    let mut rows = Vec::with_capacity(targets.len());
    let mut rhs = Vec::with_capacity(targets.len());
    for (c, &t) in targets {
        let canon = Cycle::new(g, c.vertices()).map_err(|_| Error::UnknownCycle(format!("{c:?}")))?;
        rows.push(cycle_row(g, &pairs, &cols, canon.vertices()));
        rhs.push(t);
        cycles.push(canon);
    }
    let k = rows.len();
    // track[i] expresses the current row i as a combination of the originals
    let mut track: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect()).collect();

    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..width {
        if next == k {
            break;
        }
        let Some(p) = (next..k).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(next, p);
        rhs.swap(next, p);
        track.swap(next, p);
        let inv = rows[next][col].recip();
        scale(&mut rows[next], inv);
        scale(&mut track[next], inv);
        rhs[next] = rhs[next] * inv;
        for i in 0..k {
            if i == next || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col];
            let (src_row, src_track, src_rhs) = (rows[next].clone(), track[next].clone(), rhs[next]);
            axpy(&mut rows[i], f, &src_row);
            axpy(&mut track[i], f, &src_track);
            rhs[i] = rhs[i] - f * src_rhs;
        }
        pivots.push(col);
        next += 1;
    }

    if let Some(i) = (next..k).find(|&i| !rhs[i].is_zero()) {
        let mut y = track[i].clone();
        let mut residual = rhs[i];
        let factor = integer_normalizer(&y);
        scale(&mut y, factor);
        residual = residual * factor;
        let certificate = cycles.into_iter().zip(y).filter(|(_, v)| !v.is_zero()).collect();
        return Ok(FitOutcome::Infeasible { certificate, residual });
    }

    let mut x = vec![Rational::ZERO; width];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rhs[i];
    }
    let mut data = FrontData::<Rational>::zeros(g);
    for e in 0..cols.m {
        data.w_self[e] = x[cols.w_self(e)];
        data.c_edge[e] = x[cols.c_edge(e)];
    }
    for c in 0..cols.corners {
        data.w_corner[c] = x[cols.w_corner(c)];
        data.c_corner[c] = x[cols.c_corner(c)];
    }
    for q in 0..cols.cross {
        data.w_cross[q] = x[cols.w_cross(q)];
    }
    let integral = x.iter().all(|v| v.is_integer());
    let cusps_nonnegative = data.cusps_nonnegative();
    Ok(FitOutcome::Feasible { data, integral, cusps_nonnegative })
}

fn scale(v: &mut [Rational], f: Rational) {
    for x in v {
        *x = *x * f;
    }
}

fn axpy(dst: &mut [Rational], f: Rational, src: &[Rational]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = *d - f * s;
        }
    }
}

/// Factor turning `v` into coprime integers with a positive first entry.
fn integer_normalizer(v: &[Rational]) -> Rational {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let nz: Vec<&Rational> = v.iter().filter(|x| !x.is_zero()).collect();
    let lcm = nz.iter().fold(1i128, |l, x| l / gcd(l, x.denom()) * x.denom());
    let g = nz.iter().fold(0i128, |g, x| gcd(g, x.numer() * (lcm / x.denom())));
    let sign = if nz.first().is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    Rational::new(sign * lcm, g.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendrian::cycle_tb;
    use crate::named::NamedGraph;

    fn named(s: &str) -> Graph {
        s.parse::<NamedGraph>().unwrap().build().unwrap()
    }

    fn cyc(g: &Graph, s: &[usize]) -> Cycle {
        Cycle::new(g, s).unwrap()
    }

    #[test]
    fn single_cycle_is_always_feasible() {
        let g = named("C5");
        let mut t = BTreeMap::new();
        t.insert(cyc(&g, &[0, 1, 2, 3, 4]), Rational::new(-7, 2));
        let FitOutcome::Feasible { data, .. } = fit_front_data(&g, &t).unwrap() else { panic!() };
        assert_eq!(cycle_tb(&g, &data, &cyc(&g, &[0, 1, 2, 3, 4])).unwrap(), Rational::new(-7, 2));
    }

    #[test]
    fn k4_infeasible_certificate() {
        let g = named("K4");
        let mut t = BTreeMap::new();
        for tri in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            t.insert(cyc(&g, &tri), Rational::from(-1i64));
        }
        t.insert(cyc(&g, &[0, 1, 2, 3]), Rational::from(-1i64));
        t.insert(cyc(&g, &[0, 1, 3, 2]), Rational::from(2i64));
        t.insert(cyc(&g, &[0, 2, 1, 3]), Rational::from(-1i64));
        let FitOutcome::Infeasible { certificate, residual } = fit_front_data(&g, &t).unwrap() else {
            panic!("expected infeasible")
        };
        assert!(!residual.is_zero());
        let pairs = EdgePairs::new(&g);
        let cols = Columns { m: g.m(), corners: pairs.corners().len(), cross: pairs.non_adjacent().len() };
        let mut combo = vec![Rational::ZERO; cols.len()];
        let mut dot = Rational::ZERO;
        for (c, y) in &certificate {
            let row = cycle_row(&g, &pairs, &cols, c.vertices());
            for (a, b) in combo.iter_mut().zip(row) {
                *a = *a + *y * b;
            }
            dot = dot + *y * t[c];
        }
        assert!(combo.iter().all(|x| x.is_zero()));
        assert_eq!(dot, residual);
        assert!(certificate.iter().all(|(_, y)| y.is_integer()));
    }

    #[test]
    fn unknown_cycle_rejected() {
        let g = named("K4");
        let c5 = named("C5");
        let mut t = BTreeMap::new();
        t.insert(cyc(&c5, &[0, 1, 2, 3, 4]), Rational::ONE);
        assert!(matches!(fit_front_data(&g, &t), Err(Error::UnknownCycle(_))));
    }
}
