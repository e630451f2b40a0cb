//! Verification harness: exhaustive and sampled checks of the boundary
//! inequalities, and minimal-boundary search.

pub mod gray;

use std::collections::BTreeMap;
use std::io::Write;

use rand::seq::index::sample;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::arrangement::{circle_interior, generate, GeneratorSpec};
use crate::bitset::ChamberSet;
use crate::bounds::{
    self, binom_prefix, conjecture_bound, convex_bound, gen_binom, solve_k, ConvexVariant, BOUND_MARGIN,
};
use crate::chamber_graph::{enumerate_convex_sets, ChamberGraph, CONVEX_SCAN_CAP};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rng::{self, Rng, ANNEALER, SAMPLER};
use crate::sign::IndexSet;

use gray::{boundary_of, exhaustive_minima};

/// Default subset budget for exhaustive searches.
pub const DEFAULT_BUDGET: u128 = 1 << 32;
/// Default density bound for the three-dimensional inequality.
pub const DEFAULT_DENSITY: f64 = 0.5;
/// Charge constant of the three-dimensional argument.
pub const C0: f64 = 1.0 / 12.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Exhaustive,
    Random,
    Anneal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinBoundary {
    pub size: usize,
    pub value: usize,
    pub witness: ChamberSet,
    /// False for heuristic results, which are only upper bounds.
    pub exact: bool,
}

fn boundary(g: &ChamberGraph, s: &ChamberSet) -> usize {
    g.boundary_size(s)
}

/// Smallest `|∂S|` over sets of exactly `size` chambers.
pub fn min_boundary(g: &ChamberGraph, size: usize, strategy: Strategy, budget: u128, seed: u64) -> Result<MinBoundary> {
    let v = g.vertex_count();
    if size > v {
        return Err(Error::InvalidParams(format!("size {size} exceeds {v} chambers")));
    }
    match strategy {
        Strategy::Exhaustive => exhaustive_min(g, size, budget),
        Strategy::Random => Ok(random_min(g, size, budget, seed)),
        Strategy::Anneal => Ok(anneal_min(g, size, budget, seed)),
    }
}

fn exhaustive_min(g: &ChamberGraph, size: usize, budget: u128) -> Result<MinBoundary> {
    let v = g.vertex_count();
    let count = bounds::binom_exact(v as u64, size as u64);
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "subsets of one size",
            needed: count,
            budget,
        });
    }
    if let Some(masks) = g.neighbor_masks() {
        let mut best = (u32::MAX, 0u64);
        let mut set: u64 = if size == 0 { 0 } else { u64::MAX >> (64 - size) };
        loop {
            let b = boundary_of(masks, set);
            if b < best.0 {
                best = (b, set);
            }
            if size == 0 || size == v {
                break;
            }
            // next bit pattern with the same popcount
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            let next = (((ripple ^ set) >> 2) / low) | ripple;
            if ripple == 0 || next >> v != 0 {
                break;
            }
            set = next;
        }
        return Ok(MinBoundary {
            size,
            value: best.0 as usize,
            witness: ChamberSet::from_mask(v, best.1),
            exact: true,
        });
    }
    let mut best: Option<(usize, ChamberSet)> = None;
    for combo in crate::arrangement::combinations(v, size) {
        let s = ChamberSet::from_indices(v, combo);
        let b = boundary(g, &s);
        if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
            best = Some((b, s));
        }
    }
    let (value, witness) = best.expect("at least one subset");
    Ok(MinBoundary {
        size,
        value,
        witness,
        exact: true,
    })
}

fn random_subset(rng: &mut Rng, v: usize, size: usize) -> ChamberSet {
    ChamberSet::from_indices(v, sample(rng, v, size))
}

fn random_min(g: &ChamberGraph, size: usize, budget: u128, seed: u64) -> MinBoundary {
    let v = g.vertex_count();
    let mut rng = rng::stream(seed, SAMPLER);
    let mut best: Option<(usize, ChamberSet)> = None;
    for _ in 0..budget.clamp(1, u64::MAX as u128) as u64 {
        let s = random_subset(&mut rng, v, size);
        let b = boundary(g, &s);
        if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
            best = Some((b, s));
        }
    }
    let (value, witness) = best.expect("budget is at least one");
    MinBoundary {
        size,
        value,
        witness,
        exact: false,
    }
}

/// Simulated annealing over swap moves with a linear cooling schedule.
fn anneal_min(g: &ChamberGraph, size: usize, budget: u128, seed: u64) -> MinBoundary {
    let v = g.vertex_count();
    let mut rng = rng::stream(seed, ANNEALER);
    let mut cur = random_subset(&mut rng, v, size);
    let mut cur_b = boundary(g, &cur);
    let mut best = (cur_b, cur.clone());
    let steps = budget.clamp(1, u64::MAX as u128) as u64;
    if size == 0 || size == v {
        return MinBoundary {
            size,
            value: cur_b,
            witness: cur,
            exact: false,
        };
    }
    let t0 = 2.0;
    for step in 0..steps {
        let temp = t0 * (1.0 - step as f64 / steps as f64) + 1e-3;
        let inside: Vec<usize> = cur.iter().collect();
        let out = cur.complement();
        let outside: Vec<usize> = out.iter().collect();
        let a = inside[rng.gen_range(0..inside.len())];
        let b = outside[rng.gen_range(0..outside.len())];
        let mut next = cur.clone();
        next.remove(a);
        next.insert(b);
        let nb = boundary(g, &next);
        let delta = nb as f64 - cur_b as f64;
        if delta <= 0.0 || rng.gen::<f64>() < (-delta / temp).exp() {
            cur = next;
            cur_b = nb;
            if cur_b < best.0 {
                best = (cur_b, cur.clone());
            }
        }
    }
    MinBoundary {
        size,
        value: best.0,
        witness: best.1,
        exact: false,
    }
}

/// One tested size in a conjecture run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeRecord {
    pub arrangement: String,
    pub seed: u64,
    pub size: usize,
    pub min_boundary: usize,
    pub exact: bool,
    /// Hex bitset, least significant bit = chamber 0.
    pub witness: String,
    /// Conjectured bound; absent below the range of the `k` solver.
    pub bound: Option<f64>,
    pub k: Option<f64>,
    /// Whether some convex set of this size attains the minimum; absent if not scanned.
    pub convex_attained: Option<bool>,
    /// `size <= |V|/2`.
    pub at_most_half: bool,
    /// `size <= Σ_{i<=d} C(n-d, i)`.
    pub within_weighted_range: bool,
    pub violation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scope {
    Exhaustive { min_size: usize, max_size: usize },
    Sampled { budget: u128, max_size: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub arrangement: String,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub chambers: usize,
    pub general_position: bool,
    pub scope: Scope,
    pub records: Vec<SizeRecord>,
}

impl SearchReport {
    pub fn violations(&self) -> Vec<&SizeRecord> {
        self.records.iter().filter(|r| r.violation).collect()
    }

    /// One JSON object per size.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "size",
            "min_boundary",
            "exact",
            "bound",
            "k",
            "convex_attained",
            "at_most_half",
            "within_weighted_range",
            "violation",
            "witness",
        ])
        .map_err(bounds::csv_err)?;
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.9}")).unwrap_or_default();
        for r in &self.records {
            w.write_record([
                r.size.to_string(),
                r.min_boundary.to_string(),
                r.exact.to_string(),
                opt(r.bound),
                opt(r.k),
                r.convex_attained.map(|b| b.to_string()).unwrap_or_default(),
                r.at_most_half.to_string(),
                r.within_weighted_range.to_string(),
                r.violation.to_string(),
                r.witness.clone(),
            ])
            .map_err(bounds::csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Smallest boundary over convex sets of each size.
fn convex_minima(inst: &Instance) -> Option<BTreeMap<usize, usize>> {
    if inst.n() > 10 {
        return None;
    }
    let sets = enumerate_convex_sets(&inst.graph, inst.n(), CONVEX_SCAN_CAP).ok()?;
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sets {
        let b = inst.graph.boundary_size(&s);
        out.entry(s.len()).and_modify(|m| *m = (*m).min(b)).or_insert(b);
    }
    Some(out)
}

/// Compares the minimal boundary of every size `1..=max_size` with the conjectured bound.
///
/// Only exhaustive minima on general-position input can register violations.
pub fn check_conjecture(
    inst: &Instance,
    max_size: usize,
    strategy: Strategy,
    budget: u128,
    seed: u64,
) -> Result<SearchReport> {
    let v = inst.chamber_count();
    let (n, d) = (inst.n(), inst.d());
    if max_size > v / 2 {
        return Err(Error::InvalidParams(format!(
            "max size {max_size} exceeds half of {v} chambers"
        )));
    }
    let gp = inst.arr.is_general_position();
    let minima: Vec<MinBoundary> = match strategy {
        Strategy::Exhaustive => match exhaustive_minima(&inst.graph, budget) {
            Ok(m) => (1..=max_size)
                .map(|s| MinBoundary {
                    size: s,
                    value: m.min[s] as usize,
                    witness: ChamberSet::from_mask(v, m.witness[s]),
                    exact: true,
                })
                .collect(),
            Err(Error::BudgetExceeded { .. }) | Err(Error::InvalidParams(_)) if v > 64 => (1..=max_size)
                .map(|s| exhaustive_min(&inst.graph, s, budget))
                .collect::<Result<_>>()?,
            Err(e) => return Err(e),
        },
        other => (1..=max_size)
            .map(|s| min_boundary(&inst.graph, s, other, budget, seed))
            .collect::<Result<_>>()?,
    };
    let convex = convex_minima(inst);
    let weighted_limit = binom_prefix(n.saturating_sub(d) as u64, d as u64);
    let records = minima
        .into_iter()
        .map(|m| {
            debug_assert_eq!(inst.graph.boundary_size(&m.witness), m.value);
            let bound = conjecture_bound(m.size as u64, d).ok();
            let k = solve_k(m.size as u64, d).ok().map(|s| s.k);
            let violation = gp && m.exact && bound.is_some_and(|b| (m.value as f64) < b - BOUND_MARGIN);
            SizeRecord {
                arrangement: inst.hash().to_string(),
                seed,
                size: m.size,
                min_boundary: m.value,
                exact: m.exact,
                witness: m.witness.to_hex(),
                bound,
                k,
                convex_attained: convex.as_ref().map(|c| c.get(&m.size) == Some(&m.value)),
                at_most_half: 2 * m.size <= v,
                within_weighted_range: m.size as u128 <= weighted_limit,
                violation,
            }
        })
        .collect();
    Ok(SearchReport {
        arrangement: inst.hash().to_string(),
        seed,
        n,
        d,
        chambers: v,
        general_position: gp,
        scope: match strategy {
            Strategy::Exhaustive => Scope::Exhaustive { min_size: 1, max_size },
            _ => Scope::Sampled { budget, max_size },
        },
        records,
    })
}

/// Outcome of checking one inequality over many chamber sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropReport {
    pub checked: usize,
    pub skipped: usize,
    /// Sets where the inequality holds with equality.
    pub tight: usize,
    /// Hex bitsets of offending sets.
    pub violations: Vec<String>,
}

impl PropReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: PropReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.tight += other.tight;
        self.violations.extend(other.violations);
    }
}

/// `|supp(S)| <= |S| <= Σ_A |conn(T_S(A))|`, with `|S| = |supp(S)|` for strata-connected sets.
pub fn verify_boundary_chain<I: IntoIterator<Item = ChamberSet>>(inst: &Instance, sets: I) -> PropReport {
    let st = inst.stratifier();
    let mut r = PropReport::default();
    for s in sets {
        if s.is_empty() {
            r.skipped += 1;
            continue;
        }
        r.checked += 1;
        let strat = st.stratify(&s);
        let (supp, size, comps) = (strat.support.len(), s.len(), strat.component_total());
        let ok = supp <= size && size <= comps && (!strat.is_strata_connected() || supp == size);
        if supp == size && size == comps {
            r.tight += 1;
        }
        if !ok {
            r.violations.push(s.to_hex());
        }
    }
    r
}

/// Every set of at most `2^{d-1}` chambers: `|∂S| >= |S|` and `e(S) <= ½ m log₂ m`.
pub fn verify_small_sets(inst: &Instance, budget: u128) -> Result<PropReport> {
    let (n, d) = (inst.n(), inst.d());
    if n < d {
        return Err(Error::InvalidParams(format!(
            "need at least d = {d} hyperplanes, got {n}"
        )));
    }
    inst.arr.require_general_position()?;
    let v = inst.chamber_count();
    let max = (1usize << (d - 1)).min(v);
    let needed: u128 = (1..=max).map(|m| bounds::binom_exact(v as u64, m as u64)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "small sets",
            needed,
            budget,
        });
    }
    let g = &inst.graph;
    let mut r = PropReport::default();
    for m in 1..=max {
        for combo in crate::arrangement::combinations(v, m) {
            let s = ChamberSet::from_indices(v, combo);
            r.checked += 1;
            let b = g.boundary_size(&s);
            let internal = (g.volume(&s) - b) / 2;
            let harper = 0.5 * m as f64 * (m as f64).log2();
            if b == m {
                r.tight += 1;
            }
            if b < m || internal as f64 > harper + 1e-9 {
                r.violations.push(s.to_hex());
            }
        }
    }
    Ok(r)
}

/// `|∂S| >= Σ_{A∈supp(S)} |b(A)|` for strata-connected sets; others are skipped.
pub fn verify_boundary_sum<I: IntoIterator<Item = ChamberSet>>(inst: &Instance, sets: I) -> PropReport {
    let st = inst.stratifier();
    let mut r = PropReport::default();
    for s in sets {
        if s.is_empty() {
            r.skipped += 1;
            continue;
        }
        let strat = st.stratify(&s);
        if !strat.is_strata_connected() {
            r.skipped += 1;
            continue;
        }
        r.checked += 1;
        let b = inst.graph.boundary_size(&s);
        let total = strat.bounding_total();
        if b == total {
            r.tight += 1;
        }
        if b < total {
            r.violations.push(s.to_hex());
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexViolation {
    pub witness: String,
    pub variant: Option<ConvexVariant>,
    pub boundary: usize,
    pub bound: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ConvexReport {
    pub convex_sets: usize,
    pub basic_checked: usize,
    pub bounded_checked: usize,
    pub weighted_checked: usize,
    /// Convex sets that fail the shortest-path or strata-connectivity cross-check.
    pub structure_mismatches: usize,
    pub violations: Vec<ConvexViolation>,
}

impl ConvexReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.structure_mismatches == 0
    }
}

/// All three convex-set bounds over every proper convex set in range of the `k` solver.
pub fn verify_convex(inst: &Instance, cap: usize) -> Result<ConvexReport> {
    inst.arr.require_general_position()?;
    let (n, d, v) = (inst.n(), inst.d(), inst.chamber_count());
    let sets = enumerate_convex_sets(&inst.graph, n, cap)?;
    let bounded = inst.bounded_chambers();
    let st = inst.stratifier();
    let mut r = ConvexReport {
        convex_sets: sets.len(),
        ..Default::default()
    };
    let min_size = 1usize << (d - 1);
    for s in sets {
        if !inst.graph.is_graph_convex(&s) || !st.stratify(&s).is_strata_connected() {
            r.structure_mismatches += 1;
        }
        if s.len() == v || s.len() < min_size {
            continue;
        }
        let b = inst.graph.boundary_size(&s);
        let mut check = |variant: ConvexVariant, counter: &mut usize| -> Result<()> {
            *counter += 1;
            let bound = convex_bound(s.len() as u64, d, n, variant)?;
            if (b as f64) < bound - BOUND_MARGIN {
                r.violations.push(ConvexViolation {
                    witness: s.to_hex(),
                    variant: Some(variant),
                    boundary: b,
                    bound,
                });
            }
            Ok(())
        };
        let mut c = 0;
        check(ConvexVariant::Basic, &mut c)?;
        r.basic_checked += c;
        if s.is_subset(bounded) {
            let mut c = 0;
            check(ConvexVariant::Bounded, &mut c)?;
            r.bounded_checked += c;
        }
        if s.len() as u128 <= bounds::weighted_size_limit(n, d) {
            let mut c = 0;
            check(ConvexVariant::Weighted, &mut c)?;
            r.weighted_checked += c;
        }
    }
    Ok(r)
}

/// Uniform size in `1..=max_size`, then a uniform subset of that size.
pub fn random_sets(v: usize, max_size: usize, count: usize, seed: u64) -> Vec<ChamberSet> {
    let mut rng = rng::stream(seed, SAMPLER);
    let max_size = max_size.min(v);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            random_subset(&mut rng, v, size)
        })
        .collect()
}

/// Every subset of the chambers (at most 24 of them).
pub fn all_sets(v: usize) -> Result<Vec<ChamberSet>> {
    if v > 24 {
        return Err(Error::BudgetExceeded {
            what: "all chamber subsets",
            needed: 1u128 << v,
            budget: 1 << 24,
        });
    }
    Ok((0..1u64 << v).map(|m| ChamberSet::from_mask(v, m)).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub trials: usize,
    pub bijection_failures: usize,
    pub inequality_failures: usize,
    pub ambiguous: usize,
}

impl GluingReport {
    pub fn passed(&self) -> bool {
        self.bijection_failures == 0 && self.inequality_failures == 0 && self.ambiguous == 0
    }
}

/// Random `(S, e, A)` with `A ∈ supp(S)`, `e ∉ A`; checks both gluing-graph statements.
pub fn verify_gluing(inst: &Instance, trials: usize, seed: u64) -> GluingReport {
    let mut rng = rng::stream(seed, SAMPLER);
    let st = inst.stratifier();
    let (n, v) = (inst.n(), inst.chamber_count());
    let mut r = GluingReport::default();
    while r.trials < trials {
        let size = rng.gen_range(1..=v);
        let s = random_subset(&mut rng, v, size);
        let e = rng.gen_range(0..n);
        let strat = st.stratify(&s);
        let choices: Vec<IndexSet> = strat.support.iter().copied().filter(|a| !a.contains(e)).collect();
        if choices.is_empty() {
            continue;
        }
        let a = choices[rng.gen_range(0..choices.len())];
        r.trials += 1;
        match st.gluing_graph(&inst.graph, &s, e, a) {
            Ok(gg) => {
                r.bijection_failures += !gg.bijection_holds() as usize;
                r.inequality_failures += !gg.inequality_holds() as usize;
            }
            Err(_) => r.ambiguous += 1,
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct R3Check {
    pub size: usize,
    pub boundary: usize,
    pub k: f64,
    /// `λ = c_D = max(k/n, (k-2)/(n-2))`.
    pub lambda: f64,
    /// `C = c₀(1-λ)/(1+c₀)`.
    pub constant: f64,
    /// `N₀ + N₁ + N₂`.
    pub low_strata: usize,
    pub full_lines: usize,
    pub full_planes: usize,
    pub main_holds: bool,
    pub full_holds: bool,
}

impl R3Check {
    pub fn holds(&self) -> bool {
        self.main_holds && self.full_holds
    }

    /// `|∂S| / (N₀+N₁+N₂)`.
    pub fn ratio(&self) -> f64 {
        self.boundary as f64 / self.low_strata.max(1) as f64
    }
}

/// The three-dimensional inequality `|∂S| >= C (N₀+N₁+N₂)` and `L + M <= λ Σ_{i<=2} C(k,i)`.
///
/// Sets below the `k` solver's range use `k = 2`.
pub fn check_r3(inst: &Instance, s: &ChamberSet, density: f64) -> Result<R3Check> {
    if inst.d() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: inst.d(),
        });
    }
    inst.arr.require_general_position()?;
    let v = inst.chamber_count();
    if s.len() as f64 > density * v as f64 || s.is_empty() {
        return Err(Error::Density {
            size: s.len(),
            bound: density * v as f64,
        });
    }
    let n = inst.n() as f64;
    let k = solve_k(s.len() as u64, 3).map(|x| x.k).unwrap_or(2.0);
    let lambda = (k / n).max((k - 2.0) / (n - 2.0));
    let constant = C0 * (1.0 - lambda) / (1.0 + C0);
    let st = inst.stratifier();
    let strat = st.stratify(s);
    let low: usize = strat.conn_counts.iter().take(3).sum();
    let (l, m) = st.full_flats(&strat)?;
    let boundary = inst.graph.boundary_size(s);
    let tail: f64 = (0..=2).map(|i| gen_binom(&k, i)).sum();
    Ok(R3Check {
        size: s.len(),
        boundary,
        k,
        lambda,
        constant,
        low_strata: low,
        full_lines: l,
        full_planes: m,
        main_holds: boundary as f64 >= constant * low as f64 - 1e-9,
        full_holds: (l + m) as f64 <= lambda * tail + BOUND_MARGIN,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct R3Summary {
    pub samples: usize,
    pub violations: Vec<String>,
    /// Smallest observed `|∂S| / (C (N₀+N₁+N₂))`.
    pub tightest_ratio: f64,
}

pub fn sample_r3(inst: &Instance, samples: usize, density: f64, seed: u64) -> Result<R3Summary> {
    let v = inst.chamber_count();
    let max = ((density * v as f64).floor() as usize).max(1);
    let mut out = R3Summary {
        samples: 0,
        violations: Vec::new(),
        tightest_ratio: f64::INFINITY,
    };
    for s in random_sets(v, max, samples, seed) {
        let c = check_r3(inst, &s, density)?;
        out.samples += 1;
        if !c.holds() {
            out.violations.push(s.to_hex());
        }
        let scaled = c.boundary as f64 / (c.constant * c.low_strata.max(1) as f64);
        out.tightest_ratio = out.tightest_ratio.min(scaled);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleReport {
    pub k: usize,
    pub seed: u64,
    pub lines: usize,
    pub general_position: bool,
    pub interior_size: usize,
    /// `C(k,4) + C(k,2) - k + 1`.
    pub expected_size: u128,
    pub boundary: usize,
    /// `|∂S| / |S|^{1/2}`.
    pub sqrt_ratio: f64,
    /// `|∂S| / |S|^{1/4}`.
    pub quarter_ratio: f64,
    pub witness: String,
}

/// The polygon interior of the degenerate circle arrangement and its boundary.
pub fn circle_example(k: usize, seed: u64) -> Result<CircleReport> {
    let arr = generate(&GeneratorSpec::circle(k, seed))?;
    let inst = Instance::new(arr);
    let interior = circle_interior(&inst.arr, k, seed, &inst.chambers)?;
    let s = ChamberSet::from_indices(inst.chamber_count(), interior);
    let b = inst.graph.boundary_size(&s);
    let size = s.len() as f64;
    let kk = k as u64;
    Ok(CircleReport {
        k,
        seed,
        lines: inst.n(),
        general_position: inst.arr.is_general_position(),
        interior_size: s.len(),
        expected_size: bounds::binom_exact(kk, 4) + bounds::binom_exact(kk, 2) + 1 - kk as u128,
        boundary: b,
        sqrt_ratio: b as f64 / size.sqrt(),
        quarter_ratio: b as f64 / size.powf(0.25),
        witness: s.to_hex(),
    })
}
