//! Fixed battery of checks over seeded instances, emitted as one report.

use serde::Serialize;

use crate::arrangement::GeneratorSpec;
use crate::bounds::binomial::{verify_half_size, verify_monotonicity, HalfSizeReport, MonotonicityReport};
use crate::bounds::kk::{kk_oracle, KkMode, KkReport};
use crate::bounds::{bound_table, BoundRow};
use crate::chamber_graph::CONVEX_SCAN_CAP;
use crate::error::Result;
use crate::instance::Instance;
use crate::mixing::{mixing_report, MixingReport};
use crate::search::{
    check_conjecture, circle_example, random_sets, sample_r3, verify_boundary_chain, verify_boundary_sum,
    verify_convex, verify_gluing, verify_small_sets, CircleReport, ConvexReport, GluingReport, PropReport, R3Summary,
    SearchReport, Strategy, DEFAULT_BUDGET, DEFAULT_DENSITY,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub hash: String,
    pub d: usize,
    pub n: usize,
    pub chambers: usize,
    pub edges: usize,
}

impl From<&Instance> for InstanceSummary {
    fn from(inst: &Instance) -> Self {
        InstanceSummary {
            hash: inst.hash().to_string(),
            d: inst.d(),
            n: inst.n(),
            chambers: inst.chamber_count(),
            edges: inst.graph.edge_count(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub instances: Vec<InstanceSummary>,
    pub bounds: Vec<BoundRow>,
    pub conjecture: SearchReport,
    pub boundary_chain: PropReport,
    pub small_sets: PropReport,
    pub boundary_sum: PropReport,
    pub convex: ConvexReport,
    pub gluing: GluingReport,
    pub r3: R3Summary,
    pub circle: CircleReport,
    pub monotonicity: MonotonicityReport,
    pub half_size: HalfSizeReport,
    pub kruskal_katona: KkReport,
    pub mixing: MixingReport,
    pub violations: usize,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Every section derives its randomness from `seed`.
pub fn run_suite(seed: u64) -> Result<SuiteReport> {
    let plane = Instance::generate(&GeneratorSpec::random(2, 5, seed))?;
    let space = Instance::generate(&GeneratorSpec::random(3, 5, seed))?;
    let small = Instance::generate(&GeneratorSpec::random(3, 4, seed))?;

    let conjecture = check_conjecture(
        &plane,
        plane.chamber_count() / 2,
        Strategy::Exhaustive,
        DEFAULT_BUDGET,
        seed,
    )?;
    let sets = random_sets(space.chamber_count(), space.chamber_count(), 500, seed);
    let boundary_chain = verify_boundary_chain(&space, sets.clone());
    let boundary_sum = verify_boundary_sum(&space, sets);
    let small_sets = verify_small_sets(&space, DEFAULT_BUDGET)?;
    let convex = verify_convex(&small, CONVEX_SCAN_CAP)?;
    let gluing = verify_gluing(&space, 500, seed);
    let r3 = sample_r3(&space, 200, DEFAULT_DENSITY, seed)?;
    let circle = circle_example(5, seed)?;
    let monotonicity = verify_monotonicity(12, 3, 5)?;
    let half_size = verify_half_size(40);
    let kruskal_katona = kk_oracle(4, 2, KkMode::Both)?;
    let mixing = mixing_report(&small, &[0.25, 0.1, 0.01], DEFAULT_BUDGET)?;

    let violations = conjecture.violations().len()
        + boundary_chain.violations.len()
        + small_sets.violations.len()
        + boundary_sum.violations.len()
        + convex.violations.len()
        + convex.structure_mismatches
        + usize::from(!gluing.passed())
        + r3.violations.len()
        + monotonicity.violations()
        + half_size.violations.len()
        + kruskal_katona.counterexamples.len()
        + usize::from(mixing.cheeger_holds == Some(false));

    Ok(SuiteReport {
        seed,
        instances: [&plane, &space, &small]
            .into_iter()
            .map(InstanceSummary::from)
            .collect(),
        bounds: bound_table(3, 6, 20),
        conjecture,
        boundary_chain,
        small_sets,
        boundary_sum,
        convex,
        gluing,
        r3,
        circle,
        monotonicity,
        half_size,
        kruskal_katona,
        mixing,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_clean_and_replays() {
        let a = run_suite(1).unwrap();
        assert_eq!(a.violations, 0, "{}", a.to_json());
        let b = run_suite(1).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
