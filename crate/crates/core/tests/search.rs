mod common;

use chamber_iso::arrangement::GeneratorSpec;
use chamber_iso::bitset::ChamberSet;
use chamber_iso::instance::Instance;
use chamber_iso::search::gray::{boundary_of, exhaustive_minima, gray, GrayWalker};
use chamber_iso::search::{
    check_conjecture, min_boundary, random_sets, verify_boundary_chain, verify_boundary_sum, verify_small_sets,
    Strategy, DEFAULT_BUDGET,
};
use common::*;

fn random(d: usize, n: usize, seed: u64) -> Instance {
    Instance::generate(&GeneratorSpec::random(d, n, seed)).unwrap()
}

#[test]
fn gray_walk_matches_scratch_boundary() {
    let inst = random(2, 8, 3);
    assert_eq!(inst.chamber_count(), 37);
    let masks = inst.graph.neighbor_masks().unwrap();
    let mut w = GrayWalker::new(masks, 0);
    for _ in 0..100_000 {
        w.step();
        assert_eq!(w.set(), gray(w.index()));
        assert_eq!(w.boundary(), boundary_of(masks, w.set()));
    }
    let s = ChamberSet::from_mask(37, w.set());
    assert_eq!(w.boundary() as usize, inst.graph.boundary_size(&s));
}

#[test]
fn single_chamber_minimum_on_three_lines() {
    let inst = Instance::new(three_lines());
    let m = min_boundary(&inst.graph, 1, Strategy::Exhaustive, DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(m.value, 2);
    assert!(m.exact);
}

#[test]
fn grid_square_minimum() {
    let inst = Instance::generate(&GeneratorSpec::grid(&[3, 3])).unwrap();
    assert_eq!(inst.chamber_count(), 16);
    let m = min_boundary(&inst.graph, 4, Strategy::Exhaustive, DEFAULT_BUDGET, 0).unwrap();
    assert_eq!(m.value, 4);
    assert_eq!(inst.graph.boundary_size(&m.witness), 4);
}

#[test]
fn heuristics_bound_exact_from_above() {
    let inst = random(2, 5, 7);
    let exact = min_boundary(&inst.graph, 7, Strategy::Exhaustive, DEFAULT_BUDGET, 0).unwrap();
    assert!(exact.value >= 4);
    for strategy in [Strategy::Random, Strategy::Anneal] {
        let h = min_boundary(&inst.graph, 7, strategy, 20_000, 5).unwrap();
        assert!(!h.exact);
        assert!(h.value >= exact.value);
        assert_eq!(h.witness.len(), 7);
        assert_eq!(inst.graph.boundary_size(&h.witness), h.value);
        let again = min_boundary(&inst.graph, 7, strategy, 20_000, 5).unwrap();
        assert_eq!(h, again);
    }
}

#[test]
fn per_size_minima_agree_with_single_size_search() {
    let inst = random(2, 5, 7);
    let all = exhaustive_minima(&inst.graph, DEFAULT_BUDGET).unwrap();
    for size in 0..=inst.chamber_count() {
        let one = min_boundary(&inst.graph, size, Strategy::Exhaustive, DEFAULT_BUDGET, 0).unwrap();
        assert_eq!(all.min[size] as usize, one.value, "size {size}");
        let w = ChamberSet::from_mask(inst.chamber_count(), all.witness[size]);
        assert_eq!(w.len(), size);
        assert_eq!(inst.graph.boundary_size(&w), one.value);
    }
}

#[test]
fn minima_independent_of_thread_count() {
    let inst = random(2, 5, 9);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| exhaustive_minima(&inst.graph, DEFAULT_BUDGET).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
}

#[test]
fn budget_is_enforced() {
    let inst = random(2, 5, 7);
    assert!(exhaustive_minima(&inst.graph, 1000).is_err());
    assert!(min_boundary(&inst.graph, 8, Strategy::Exhaustive, 10, 0).is_err());
}

#[test]
fn conjecture_holds_on_small_general_position_inputs() {
    for (d, n, seed) in [(2, 5, 7), (3, 4, 1)] {
        let inst = random(d, n, seed);
        let report = check_conjecture(
            &inst,
            inst.chamber_count() / 2,
            Strategy::Exhaustive,
            DEFAULT_BUDGET,
            seed,
        )
        .unwrap();
        assert!(report.general_position);
        assert!(report.violations().is_empty(), "d={d} n={n}");
        assert!(report.records.iter().all(|r| r.exact));
        let mut jsonl = Vec::new();
        report.write_jsonl(&mut jsonl).unwrap();
        assert_eq!(String::from_utf8(jsonl).unwrap().lines().count(), report.records.len());
    }
}

#[test]
fn small_sets_bound_on_five_planes_in_space() {
    let inst = random(3, 5, 2);
    let report = verify_small_sets(&inst, DEFAULT_BUDGET).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert!(report.checked > 0);
}

#[test]
fn boundary_chain_on_random_sets() {
    let inst = random(3, 5, 4);
    let sets = random_sets(inst.chamber_count(), inst.chamber_count(), 300, 8);
    let p32 = verify_boundary_chain(&inst, sets.clone());
    assert!(p32.passed(), "{:?}", p32.violations);
    let p37 = verify_boundary_sum(&inst, sets);
    assert!(p37.passed(), "{:?}", p37.violations);
}

#[test]
fn triangle_set_is_tight() {
    let inst = Instance::new(three_lines());
    let s = triangle_set(&inst);
    let p37 = verify_boundary_sum(&inst, [s]);
    assert!(p37.passed());
    assert_eq!(p37.tight, 1);
}
