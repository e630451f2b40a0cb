#![allow(clippy::needless_range_loop)]

mod common;

use chamber_iso::arrangement::{
    circle_side_lines, enumerate_chambers, enumerate_faces, generate, group_by_zero_set, GeneralPosition,
    GeneratorSpec, ViolationKind,
};
use chamber_iso::bitset::ChamberSet;
use chamber_iso::chamber_graph::{enumerate_convex_sets, CONVEX_SCAN_CAP};
use chamber_iso::instance::Instance;
use chamber_iso::IndexSet;
use common::*;
use proptest::prelude::*;

#[test]
fn random_seed_seven_has_sixteen_chambers() {
    let arr = generate(&GeneratorSpec::random(2, 5, 7)).unwrap();
    assert!(arr.is_general_position());
    assert_eq!(enumerate_chambers(&arr).len(), 16);
}

#[test]
fn random_generation_replays() {
    let a = generate(&GeneratorSpec::random(3, 6, 11)).unwrap();
    let b = generate(&GeneratorSpec::random(3, 6, 11)).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let c = generate(&GeneratorSpec::random(3, 6, 12)).unwrap();
    assert_ne!(a.to_json(), c.to_json());
}

#[test]
fn random_generation_rejects_bad_params() {
    assert!(generate(&GeneratorSpec::random(0, 5, 1)).is_err());
    assert!(generate(&GeneratorSpec::random(2, 65, 1)).is_err());
}

#[test]
fn grid_counts() {
    let arr = generate(&GeneratorSpec::grid(&[3, 3, 3])).unwrap();
    assert_eq!(arr.len(), 9);
    assert_eq!(enumerate_chambers(&arr).len(), 64);
    let arr = generate(&GeneratorSpec::grid(&[3, 3])).unwrap();
    assert_eq!(arr.len(), 6);
    assert!(generate(&GeneratorSpec::grid(&[])).is_err());
}

#[test]
fn four_planes_in_space() {
    let arr = generate(&GeneratorSpec::random(3, 4, 1)).unwrap();
    let inst = Instance::new(arr);
    assert_eq!(inst.chamber_count(), 15);
    assert_eq!(inst.graph.edge_count(), 28);
}

#[test]
fn circle_family() {
    let arr = generate(&GeneratorSpec::circle(5, 0)).unwrap();
    assert_eq!(arr.len(), 10);
    match arr.general_position() {
        GeneralPosition::Violated(v) => {
            assert_eq!(v.kind, ViolationKind::CommonPoint);
            assert_eq!(v.indices.len(), 3);
        }
        GeneralPosition::Certified(_) => panic!("circle arrangement must be degenerate"),
    }
    assert_eq!(circle_side_lines(5).len(), 5);
    assert!(generate(&GeneratorSpec::circle(3, 0)).is_err());
}

#[test]
fn circle_interior_and_boundary() {
    for k in [5, 6] {
        let r = chamber_iso::search::circle_example(k, 0).unwrap();
        assert_eq!(r.interior_size as u128, r.expected_size, "k={k}");
        assert_eq!(r.boundary, k);
    }
}

#[test]
fn induced_face_counts() {
    for seed in 0..3 {
        let arr = generate(&GeneratorSpec::random(3, 5, seed)).unwrap();
        let faces = enumerate_faces(&arr, 3);
        for (a, ids) in group_by_zero_set(&faces) {
            let (n, d, k) = (arr.len() as u64, 3u64, a.len() as u64);
            assert_eq!(ids.len() as u128, binom_sum(n - k, d - k), "A={a}");
        }
        for f in &faces {
            assert_eq!(arr.sign_vector(&f.witness).unwrap(), f.signs);
        }
    }
}

#[test]
fn triangle_fixture_boundary_and_convexity() {
    let inst = Instance::new(three_lines());
    let s = triangle_set(&inst);
    let (count, edges) = inst.graph.edge_boundary(&s);
    assert_eq!(count, 5);
    assert_eq!(edges.len(), 5);
    assert!(!inst.graph.is_graph_convex(&s));
    let convex = enumerate_convex_sets(&inst.graph, 3, CONVEX_SCAN_CAP).unwrap();
    assert!(!convex.contains(&s));
    let triangle = ChamberSet::from_indices(7, [inst.graph.index_of(&sv("-++")).unwrap()]);
    assert!(convex.contains(&triangle));
    assert!(inst.graph.is_graph_convex(&triangle));
}

#[test]
fn convex_notions_agree_on_small_instances() {
    for (d, n, seed) in [(2, 3, 0), (2, 4, 1), (2, 5, 2), (3, 4, 3), (3, 5, 4)] {
        let inst = Instance::generate(&GeneratorSpec::random(d, n, seed)).unwrap();
        let convex = enumerate_convex_sets(&inst.graph, n, CONVEX_SCAN_CAP).unwrap();
        assert!(convex.iter().all(|s| inst.graph.is_graph_convex(s)));
        if inst.chamber_count() <= 16 {
            let graph_convex = (1u64..1 << inst.chamber_count())
                .map(|m| ChamberSet::from_mask(inst.chamber_count(), m))
                .filter(|s| inst.graph.is_graph_convex(s))
                .count();
            assert_eq!(graph_convex, convex.len(), "d={d} n={n}");
        }
    }
}

#[test]
fn graph_metric_is_hamming() {
    for (d, n, seed) in [(2, 4, 5), (2, 6, 6), (3, 5, 7), (3, 6, 8)] {
        let inst = Instance::generate(&GeneratorSpec::random(d, n, seed)).unwrap();
        let g = &inst.graph;
        let dist = g.distances();
        for u in 0..g.vertex_count() {
            for v in 0..g.vertex_count() {
                assert_eq!(dist[u][v] as usize, g.signs(u).separation(g.signs(v)).len());
            }
        }
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        let expected = n as u128 * binom_sum(n as u64 - 1, d as u64 - 1);
        assert_eq!(g.edge_count() as u128, expected);
    }
}

#[test]
fn strata_triangle_fixture() {
    let inst = Instance::new(three_lines());
    let strat = inst.stratifier().stratify(&triangle_set(&inst));
    assert_eq!(
        strat.support,
        vec![IndexSet::EMPTY, IndexSet::singleton(0), IndexSet::singleton(1)]
    );
    assert_eq!(strat.bounding[&IndexSet::EMPTY], IndexSet::from_indices([2]));
    assert_eq!(strat.bounding[&IndexSet::singleton(0)], IndexSet::from_indices([1, 2]));
    assert_eq!(strat.bounding[&IndexSet::singleton(1)], IndexSet::from_indices([0, 2]));
    assert_eq!(strat.bounding_total(), 5);
    assert!(strat.is_strata_connected());
    let json = strat.to_json();
    assert_eq!(json["connCounts"], serde_json::json!([1, 2, 0]));
}

#[test]
fn gluing_on_triangle_fixture() {
    let inst = Instance::new(three_lines());
    let s = triangle_set(&inst);
    let gg = inst
        .stratifier()
        .gluing_graph(&inst.graph, &s, 0, IndexSet::EMPTY)
        .unwrap();
    assert_eq!(gg.left.len() + gg.right.len(), 2);
    assert_eq!(gg.edges.len(), 1);
    assert_eq!(gg.component_count, 1);
    assert!(gg.bijection_holds());
    // no crossing through the third line: the two sides stay apart
    let gg = inst
        .stratifier()
        .gluing_graph(&inst.graph, &s, 2, IndexSet::EMPTY)
        .unwrap();
    assert!(gg.edges.is_empty());
    assert_eq!(gg.component_count, gg.left.len() + gg.right.len());
}

#[test]
fn full_flats_extremes() {
    let inst = Instance::generate(&GeneratorSpec::random(3, 5, 1)).unwrap();
    let st = inst.stratifier();
    let all = st.stratify(&ChamberSet::full(inst.chamber_count()));
    assert_eq!(st.full_flats(&all).unwrap(), (10, 5));
    let one = st.stratify(&ChamberSet::from_indices(inst.chamber_count(), [0]));
    assert_eq!(st.full_flats(&one).unwrap(), (0, 0));
}

#[test]
fn bound_lifts_on_convex_sets() {
    for (d, n, seed) in [(2, 5, 3), (3, 5, 4)] {
        let inst = Instance::generate(&GeneratorSpec::random(d, n, seed)).unwrap();
        for s in enumerate_convex_sets(&inst.graph, n, CONVEX_SCAN_CAP).unwrap() {
            let r = inst.stratifier().check_bound_lifts(&inst.graph, &s).unwrap();
            assert!(r.violations.is_empty(), "{:?}", r.violations);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chamber_count_formula(d in 2usize..4, n in 1usize..7, seed in 0u64..1000) {
        let arr = generate(&GeneratorSpec::random(d, n, seed)).unwrap();
        prop_assert_eq!(enumerate_chambers(&arr).len() as u128, binom_sum(n as u64, d as u64));
    }

    #[test]
    fn boundary_symmetric_under_complement(mask in 0u64..(1 << 16)) {
        let inst = Instance::generate(&GeneratorSpec::random(2, 5, 7)).unwrap();
        let s = ChamberSet::from_mask(16, mask);
        prop_assert_eq!(inst.graph.boundary_size(&s), inst.graph.boundary_size(&s.complement()));
        prop_assert_eq!(inst.graph.boundary_size(&s), inst.graph.edge_boundary(&s).0);
    }

    #[test]
    fn support_is_down_set(mask in 1u64..(1 << 15), seed in 0u64..4) {
        let inst = Instance::generate(&GeneratorSpec::random(3, 4, seed)).unwrap();
        let strat = inst.stratifier().stratify(&ChamberSet::from_mask(15, mask));
        for a in &strat.support {
            for b in a.subsets() {
                prop_assert!(strat.in_support(b));
            }
        }
        for (a, comps) in &strat.components {
            for c in comps {
                for &f in c {
                    prop_assert!(a.is_subset(inst.stratifier().face_signs(f).zero_set()));
                }
            }
        }
        if inst.d() == 3 {
            prop_assert_eq!(strat.conn_counts[3], strat.support.iter().filter(|a| a.len() == 3).count());
        }
    }
}
