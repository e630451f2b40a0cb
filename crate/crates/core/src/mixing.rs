//! Lazy simple random walk on the chamber graph.

use std::collections::BTreeMap;
use std::io::Write;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::ChamberSet;
use crate::chamber_graph::ChamberGraph;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::search::gray::{gray, GrayWalker};

/// Largest graph for the dense eigensolve.
pub const EIGEN_BUDGET: usize = 5000;
/// Largest graph for exhaustive conductance.
pub const CONDUCTANCE_EXHAUSTIVE_MAX: usize = 24;
pub const DEFAULT_ITERATION_CAP: usize = 100_000;
/// Graphs up to this size evolve distributions in exact arithmetic by default.
pub const EXACT_EVOLUTION_MAX: usize = 32;

/// `P(u,u) = ½`, `P(u,v) = 1/(2 deg u)` on edges, `π(v) = deg v / 2|E|`.
#[derive(Clone, Debug)]
pub struct LazyWalk<T = Rational> {
    /// Sparse rows, diagonal first, then neighbors in ascending order.
    rows: Vec<Vec<(usize, T)>>,
    degrees: Vec<usize>,
    stationary: Vec<T>,
    edges: usize,
}

pub fn build_walk<T: Scalar>(g: &ChamberGraph) -> Result<LazyWalk<T>> {
    if g.vertex_count() == 0 || !g.is_connected() || g.edge_count() == 0 {
        return Err(Error::Disconnected);
    }
    let half = T::one() / T::two();
    let two_e = T::from_int(2 * g.edge_count() as i64);
    let mut rows = Vec::with_capacity(g.vertex_count());
    for u in 0..g.vertex_count() {
        let step = half.clone() / T::from_int(g.degree(u) as i64);
        let mut row = vec![(u, half.clone())];
        row.extend(g.neighbors(u).iter().map(|&(v, _)| (v, step.clone())));
        rows.push(row);
    }
    Ok(LazyWalk {
        rows,
        degrees: g.degrees(),
        stationary: g
            .degrees()
            .iter()
            .map(|&d| T::from_int(d as i64) / two_e.clone())
            .collect(),
        edges: g.edge_count(),
    })
}

impl<T: Scalar> LazyWalk<T> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn stationary(&self) -> &[T] {
        &self.stationary
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn row(&self, u: usize) -> &[(usize, T)] {
        &self.rows[u]
    }

    pub fn transition(&self, u: usize, v: usize) -> T {
        self.rows[u]
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(T::zero)
    }

    /// `max_u |Σ_v P(u,v) - 1|`.
    pub fn row_defect(&self) -> T {
        self.rows
            .iter()
            .map(|r| (r.iter().fold(T::zero(), |a, (_, p)| a + p.clone()) - T::one()).abs())
            .fold(T::zero(), max)
    }

    /// `max_v |(πP)(v) - π(v)|`.
    pub fn stationarity_defect(&self) -> T {
        let next = self.step(&self.stationary);
        next.iter()
            .zip(&self.stationary)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(T::zero(), max)
    }

    /// `max |π(u)P(u,v) - π(v)P(v,u)|` over edges.
    pub fn reversibility_defect(&self) -> T {
        let mut worst = T::zero();
        for (u, row) in self.rows.iter().enumerate() {
            for (v, p) in row {
                let forward = self.stationary[u].clone() * p.clone();
                let back = self.stationary[*v].clone() * self.transition(*v, u);
                worst = max(worst, (forward - back).abs());
            }
        }
        worst
    }

    /// One step of a row distribution: `μ ↦ μP`.
    pub fn step(&self, mu: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); mu.len()];
        for (u, row) in self.rows.iter().enumerate() {
            if mu[u].is_zero() {
                continue;
            }
            for (v, p) in row {
                out[*v] = out[*v].clone() + mu[u].clone() * p.clone();
            }
        }
        out
    }

    /// `‖μ - π‖_TV`.
    pub fn tv_distance(&self, mu: &[T]) -> T {
        let total = mu
            .iter()
            .zip(&self.stationary)
            .fold(T::zero(), |a, (m, p)| a + (m.clone() - p.clone()).abs());
        total / T::two()
    }
}

fn max<T: Scalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// `1 - λ₂` from the eigenvalues of `D^{1/2} P D^{-1/2}`.
pub fn spectral_gap<T: Scalar>(walk: &LazyWalk<T>) -> Result<f64> {
    let n = walk.len();
    if n > EIGEN_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "dense eigensolve vertices",
            needed: n as u128,
            budget: EIGEN_BUDGET as u128,
        });
    }
    if n == 1 {
        return Ok(1.0);
    }
    let mut eig: Vec<f64> = symmetrized(walk)
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(1.0 - eig[1])
}

fn symmetrized(walk: &LazyWalk<impl Scalar>) -> DMatrix<f64> {
    let n = walk.len();
    let deg: Vec<f64> = walk.degrees.iter().map(|&d| d as f64).collect();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (u, row) in walk.rows.iter().enumerate() {
        for (v, _) in row {
            m[(u, *v)] = if u == *v { 0.5 } else { 0.5 / (deg[u] * deg[*v]).sqrt() };
        }
    }
    m
}

/// Best prefix of the chambers ordered by the second eigenvector, scaled by
/// `D^{-1/2}`; an upper bound on `Φ*` together with its witness.
pub fn sweep_conductance<T: Scalar>(g: &ChamberGraph, walk: &LazyWalk<T>) -> Result<(f64, ChamberSet)> {
    let n = walk.len();
    if n > EIGEN_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "dense eigensolve vertices",
            needed: n as u128,
            budget: EIGEN_BUDGET as u128,
        });
    }
    if n < 2 {
        return Err(Error::Disconnected);
    }
    let eig = symmetrized(walk).symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let fiedler = eig.eigenvectors.column(idx[1]);
    let score: Vec<f64> = (0..n).map(|v| fiedler[v] / (walk.degrees[v] as f64).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| score[a].total_cmp(&score[b]).then(a.cmp(&b)));
    let e = g.edge_count();
    let mut best: Option<(f64, ChamberSet)> = None;
    // both ends of the ordering, since only the smaller side is admissible
    for ord in [order.clone(), order.into_iter().rev().collect()] {
        let mut s = ChamberSet::empty(n);
        let mut vol = 0;
        for &v in &ord[..n - 1] {
            s.insert(v);
            vol += walk.degrees[v];
            if vol > e {
                break;
            }
            let phi = g.boundary_size(&s) as f64 / (2.0 * vol as f64);
            if best.as_ref().is_none_or(|(b, _)| phi < *b) {
                best = Some((phi, s.clone()));
            }
        }
    }
    best.ok_or(Error::Disconnected)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConductanceMode {
    Exhaustive,
    IsoperimetricBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Conductance {
    pub mode: ConductanceMode,
    /// Exact minimum in exhaustive mode; a certified lower bound otherwise.
    pub value: f64,
    /// A minimizing set in exhaustive mode.
    pub witness: Option<ChamberSet>,
    /// Largest `c'` with `|∂U| >= c' vol(U)^{2/3}` for every `U` with `π(U) <= ½`.
    pub fitted_c_prime: Option<f64>,
}

/// `Φ* = min_{π(S) <= ½} |∂S| / (2 vol S)`.
pub fn conductance_star(g: &ChamberGraph, mode: ConductanceMode, budget: u128) -> Result<Conductance> {
    match mode {
        ConductanceMode::Exhaustive => exhaustive_conductance(g),
        ConductanceMode::IsoperimetricBound => bound_conductance(g, budget),
    }
}

fn exhaustive_conductance(g: &ChamberGraph) -> Result<Conductance> {
    let v = g.vertex_count();
    if v > CONDUCTANCE_EXHAUSTIVE_MAX {
        return Err(Error::BudgetExceeded {
            what: "vertices for exhaustive conductance",
            needed: v as u128,
            budget: CONDUCTANCE_EXHAUSTIVE_MAX as u128,
        });
    }
    if v < 2 {
        return Err(Error::Disconnected);
    }
    let masks = g.neighbor_masks().expect("small graph");
    let deg: Vec<u64> = g.degrees().iter().map(|&d| d as u64).collect();
    let e = g.edge_count() as u64;
    let mut best: Option<(u64, u64, u64)> = None;
    let mut w = GrayWalker::new(masks, 0);
    let mut vol = 0u64;
    loop {
        let set = w.set();
        if set != 0 && vol <= e {
            let b = w.boundary() as u64;
            // compare b/vol exactly
            if best.is_none_or(|(bb, bv, _)| b * bv < bb * vol) {
                best = Some((b, vol, set));
            }
        }
        if w.index() + 1 == 1u64 << v {
            break;
        }
        let before = w.set();
        w.step();
        let changed = (before ^ w.set()).trailing_zeros() as usize;
        if w.set() >> changed & 1 == 1 {
            vol += deg[changed];
        } else {
            vol -= deg[changed];
        }
        debug_assert_eq!(gray(w.index()), w.set());
    }
    let (b, vol, set) = best.ok_or(Error::Disconnected)?;
    Ok(Conductance {
        mode: ConductanceMode::Exhaustive,
        value: b as f64 / (2.0 * vol as f64),
        witness: Some(ChamberSet::from_mask(v, set)),
        fitted_c_prime: None,
    })
}

/// Certified lower bound from exact per-size boundary minima and the largest
/// volume a set of each size can have.
fn bound_conductance(g: &ChamberGraph, budget: u128) -> Result<Conductance> {
    let minima = crate::search::gray::exhaustive_minima(g, budget)?;
    let e = g.edge_count() as f64;
    let mut deg_desc = g.degrees();
    deg_desc.sort_unstable_by(|a, b| b.cmp(a));
    let mut deg_asc = deg_desc.clone();
    deg_asc.reverse();
    let mut phi = f64::INFINITY;
    let mut c_prime = f64::INFINITY;
    let (mut hi, mut lo) = (0usize, 0usize);
    for m in 1..g.vertex_count() {
        hi += deg_desc[m - 1];
        lo += deg_asc[m - 1];
        if lo as f64 > e {
            break;
        }
        let max_vol = (hi as f64).min(e);
        let b = minima.min[m] as f64;
        phi = phi.min(b / (2.0 * max_vol));
        c_prime = c_prime.min(b / max_vol.powf(2.0 / 3.0));
    }
    Ok(Conductance {
        mode: ConductanceMode::IsoperimetricBound,
        value: phi.max(0.5 * c_prime * e.powf(-1.0 / 3.0)),
        witness: None,
        fitted_c_prime: Some(c_prime),
    })
}

/// Smallest `t` with `max_u ‖P^t(u,·) - π‖_TV <= ε`.
pub fn tv_mixing_time<T: Scalar>(walk: &LazyWalk<T>, eps: f64, cap: usize) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParams(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let threshold = T::from_f64(eps).expect("epsilon is finite");
    let times: Vec<Result<usize>> = (0..walk.len())
        .into_par_iter()
        .map(|u| {
            let mut mu = vec![T::zero(); walk.len()];
            mu[u] = T::one();
            for t in 0..=cap {
                if walk.tv_distance(&mu) <= threshold {
                    return Ok(t);
                }
                mu = walk.step(&mu);
            }
            Err(Error::IterationCap(cap))
        })
        .collect();
    times.into_iter().try_fold(0, |acc, t| Ok(acc.max(t?)))
}

/// Mixing time evolved exactly on small graphs and in double precision otherwise.
pub fn mixing_time(g: &ChamberGraph, eps: f64, cap: usize) -> Result<usize> {
    if g.vertex_count() <= EXACT_EVOLUTION_MAX {
        tv_mixing_time(&build_walk::<Rational>(g)?, eps, cap)
    } else {
        tv_mixing_time(&build_walk::<f64>(g)?, eps, cap)
    }
}

/// `ln(1/(ε π_min)) / gap` using `π_min >= 1/(2|E|)`.
pub fn spectral_mixing_bound(gap: f64, edges: usize, eps: f64) -> f64 {
    (2.0 * edges as f64 / eps).ln() / gap
}

/// `t / (n² ln(n/ε))`.
pub fn k_ratio(n: usize, eps: f64, t: usize) -> f64 {
    let n = n as f64;
    t as f64 / (n * n * (n / eps).ln())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingReport {
    pub arrangement: String,
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub spectral_gap: f64,
    pub conductance: Option<Conductance>,
    /// Keyed by `ε` printed with its shortest round-trip form.
    pub t_mix: BTreeMap<String, usize>,
    /// `ln(1/(ε π_min)) / gap` with `π_min >= 1/(2|E|)`, keyed like `t_mix`.
    pub t_mix_bound: BTreeMap<String, f64>,
    /// Smallest `K` with `t_mix(ε) <= K n² ln(n/ε)` over the measured `ε`.
    pub fitted_k: f64,
    pub cheeger_holds: Option<bool>,
}

pub fn mixing_report(inst: &crate::instance::Instance, eps: &[f64], budget: u128) -> Result<MixingReport> {
    let g = &inst.graph;
    let walk = build_walk::<f64>(g)?;
    let gap = spectral_gap(&walk)?;
    let conductance = if g.vertex_count() <= CONDUCTANCE_EXHAUSTIVE_MAX {
        Some(conductance_star(g, ConductanceMode::Exhaustive, budget)?)
    } else {
        conductance_star(g, ConductanceMode::IsoperimetricBound, budget).ok()
    };
    let cheeger_holds = conductance
        .as_ref()
        .filter(|c| c.mode == ConductanceMode::Exhaustive)
        .map(|c| cheeger_sandwich(gap, c.value));
    let mut t_mix = BTreeMap::new();
    let mut t_mix_bound = BTreeMap::new();
    let mut fitted_k: f64 = 0.0;
    for &e in eps {
        let t = mixing_time(g, e, DEFAULT_ITERATION_CAP)?;
        fitted_k = fitted_k.max(k_ratio(inst.n(), e, t));
        t_mix.insert(format!("{e}"), t);
        t_mix_bound.insert(format!("{e}"), spectral_mixing_bound(gap, g.edge_count(), e));
    }
    Ok(MixingReport {
        arrangement: inst.hash().to_string(),
        n: inst.n(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        spectral_gap: gap,
        conductance,
        t_mix,
        t_mix_bound,
        fitted_k,
        cheeger_holds,
    })
}

/// `Φ²/2 <= gap <= 2Φ`, with a little floating-point slack.
pub fn cheeger_sandwich(gap: f64, phi: f64) -> bool {
    gap >= phi * phi / 2.0 - 1e-9 && gap <= 2.0 * phi + 1e-9
}

/// Batch rows: `n, vertices, gap, phi, t(¼), t(1/10), t(1/100)`.
pub fn write_sweep_csv<W: Write>(reports: &[MixingReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "vertices", "gap", "phi", "t_0.25", "t_0.1", "t_0.01", "fitted_k"])
        .map_err(crate::bounds::csv_err)?;
    for r in reports {
        let t = |k: &str| r.t_mix.get(k).map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.n.to_string(),
            r.vertices.to_string(),
            format!("{:.12}", r.spectral_gap),
            r.conductance
                .as_ref()
                .map(|c| format!("{:.12}", c.value))
                .unwrap_or_default(),
            t("0.25"),
            t("0.1"),
            t("0.01"),
            format!("{:.9}", r.fitted_k),
        ])
        .map_err(crate::bounds::csv_err)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use num_traits::Zero;

    fn cycle(n: usize) -> ChamberGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, i)).collect();
        ChamberGraph::from_edges(n, &edges)
    }

    fn edge() -> ChamberGraph {
        ChamberGraph::from_edges(2, &[(0, 1, 0)])
    }

    #[test]
    fn two_vertex_walk() {
        let w = build_walk::<Rational>(&edge()).unwrap();
        assert_eq!(w.transition(0, 0), rational(1, 2));
        assert_eq!(w.transition(0, 1), rational(1, 2));
        assert_eq!(w.stationary(), [rational(1, 2), rational(1, 2)]);
        assert!(w.stationarity_defect().is_zero());
        assert!((spectral_gap(&w).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(tv_mixing_time(&w, 0.25, 10).unwrap(), 1);
        assert_eq!(tv_mixing_time(&w, 0.01, 10).unwrap(), 1);
        let c = conductance_star(&edge(), ConductanceMode::Exhaustive, 1 << 20).unwrap();
        assert_eq!(c.value, 0.5);
    }

    #[test]
    fn six_cycle_gap() {
        let w = build_walk::<f64>(&cycle(6)).unwrap();
        // lazy eigenvalues (1 + cos(2πj/6))/2; the second largest is 3/4
        assert!((spectral_gap(&w).unwrap() - 0.25).abs() < 1e-9);
    }

    #[test]
    fn disconnected_rejected() {
        let g = ChamberGraph::from_edges(4, &[(0, 1, 0), (2, 3, 1)]);
        assert!(matches!(build_walk::<f64>(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn exact_identities_on_cycle() {
        let w = build_walk::<Rational>(&cycle(7)).unwrap();
        assert!(w.row_defect().is_zero());
        assert!(w.reversibility_defect().is_zero());
        assert!(w.stationarity_defect().is_zero());
    }

    #[test]
    fn exact_and_float_evolution_agree() {
        let g = cycle(9);
        for eps in [0.25, 0.1, 0.01] {
            let exact = tv_mixing_time(&build_walk::<Rational>(&g).unwrap(), eps, 1000).unwrap();
            let float = tv_mixing_time(&build_walk::<f64>(&g).unwrap(), eps, 1000).unwrap();
            assert_eq!(exact, float);
        }
    }

    #[test]
    fn iteration_cap() {
        let w = build_walk::<f64>(&cycle(30)).unwrap();
        assert!(matches!(tv_mixing_time(&w, 0.01, 3), Err(Error::IterationCap(3))));
        assert!(tv_mixing_time(&w, 1.5, 3).is_err());
    }

    #[test]
    fn cycle_conductance_and_cheeger() {
        let g = cycle(8);
        let c = conductance_star(&g, ConductanceMode::Exhaustive, 1 << 20).unwrap();
        // half the cycle: 2 cut edges over volume 8
        assert!((c.value - 2.0 / 16.0).abs() < 1e-12);
        let gap = spectral_gap(&build_walk::<f64>(&g).unwrap()).unwrap();
        assert!(cheeger_sandwich(gap, c.value));
        let lb = conductance_star(&g, ConductanceMode::IsoperimetricBound, 1 << 20).unwrap();
        assert!(lb.value <= c.value + 1e-12);
        let (ub, w) = sweep_conductance(&g, &build_walk::<f64>(&g).unwrap()).unwrap();
        assert!(ub >= c.value - 1e-12);
        // the cycle's sweep finds an optimal arc
        assert!((ub - c.value).abs() < 1e-12);
        assert_eq!(w.len(), 4);
    }
}
