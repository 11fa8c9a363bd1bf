mod common;

use common::{ids, naive_degree_cores, Dense, Oracle};
use corekit::engine::DeletionProcess;
use corekit::property::{Removal, Update};
use corekit::{
    check_monotonicity, core_hierarchy, degree_cores_linear, greedy_color_by_core, max_clique_localized,
    p_core_at_level, parse_net, segmentation, write_net, BuildOptions, DegreeMode, NetDocument, Network,
    PeelOptions, Property, SubsetView, Thresholds, VertexId, VertexProperty,
};
use proptest::prelude::*;

fn network(directed: bool, max_n: usize) -> impl Strategy<Value = Network<f64>> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let line = (0..n, 0..n, 1u32..=9);
            (Just(n), prop::collection::vec(line, 0..=n * 3))
        })
        .prop_map(move |(n, lines)| {
            let lines: Vec<_> = lines.into_iter().map(|(u, v, w)| (u, v, w as f64)).collect();
            Network::from_indexed(common::labels(n), &lines, directed, BuildOptions::default()).unwrap()
        })
}

fn with_mask(net: Network<f64>) -> impl Strategy<Value = (Network<f64>, Vec<bool>)> {
    let n = net.n();
    (Just(net), prop::collection::vec(any::<bool>(), n))
}

const MONOTONE_UNDIRECTED: [Property; 4] =
    [Property::Degree, Property::WeightSum, Property::WeightMax, Property::Triangles];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn alive_counts_match_recount(net in network(true, 14), order in prop::collection::vec(0usize..14, 0..14)) {
        let mut view = SubsetView::full(&net);
        for v in order.into_iter().filter(|&v| v < net.n()) {
            view.remove(&net, VertexId(v));
            prop_assert!(view.is_consistent(&net));
        }
    }

    #[test]
    fn degree_sum_is_twice_m(net in network(false, 20)) {
        let total: usize = net.vertices().map(|v| net.degree(v)).sum();
        prop_assert_eq!(total, 2 * net.m());
        for v in net.vertices() {
            for l in net.links(v) {
                prop_assert!(net.has_link(l.to, v));
            }
        }
    }

    #[test]
    fn values_match_dense_oracle((net, mask) in network(false, 12).prop_flat_map(with_mask)) {
        let dense = Dense::of(&net);
        let view = SubsetView::from_mask(&net, mask.clone());
        let pairs = [
            (Property::Degree, Oracle::Degree),
            (Property::WeightSum, Oracle::WeightSum),
            (Property::WeightMax, Oracle::WeightMax),
            (Property::Triangles, Oracle::Triangles),
            (Property::AverageWeight, Oracle::Average),
        ];
        for v in net.vertices() {
            for (p, o) in pairs {
                let got = p.evaluate(&net, v, &view).unwrap();
                let want = dense.value(o, v.0, &mask);
                prop_assert!((got - want).abs() < 1e-12, "{} at {}: {} vs {}", p, v, got, want);
            }
        }
    }

    #[test]
    fn degree_equals_unit_weight_sum((net, mask) in network(false, 12).prop_flat_map(with_mask)) {
        let lines: Vec<_> = net.lines().iter().map(|l| (l.source.0, l.target.0, 1.0)).collect();
        let unit = Network::from_indexed(net.labels().to_vec(), &lines, false, BuildOptions::default()).unwrap();
        let view = SubsetView::from_mask(&unit, mask);
        for v in unit.vertices() {
            prop_assert_eq!(
                Property::Degree.value(&unit, v, &view),
                Property::WeightSum.value(&unit, v, &view)
            );
        }
    }

    #[test]
    fn in_plus_out_is_sum((net, mask) in network(true, 12).prop_flat_map(with_mask)) {
        let view = SubsetView::from_mask(&net, mask);
        for v in net.vertices() {
            let p2 = Property::InDegree.value(&net, v, &view);
            let p3 = Property::OutDegree.value(&net, v, &view);
            prop_assert_eq!(Property::InPlusOut.value(&net, v, &view), p2 + p3);
        }
    }

    #[test]
    fn max_bounded_by_sum((net, mask) in network(false, 12).prop_flat_map(with_mask)) {
        let view = SubsetView::from_mask(&net, mask);
        for v in net.vertices() {
            if view.alive_degree(v, DegreeMode::Total) > 0 {
                prop_assert!(Property::WeightMax.value(&net, v, &view) <= Property::WeightSum.value(&net, v, &view));
            }
        }
    }

    #[test]
    fn incremental_agrees_with_evaluate(net in network(true, 12), victim in 0usize..12) {
        let victim = VertexId(victim % net.n());
        let mut view = SubsetView::full(&net);
        let before: Vec<Vec<f64>> = Property::ALL.iter()
            .map(|p| net.vertices().map(|v| p.value(&net, v, &view)).collect())
            .collect();
        view.remove(&net, victim);
        for l in net.links(victim) {
            let removal = Removal {
                neighbor: victim,
                weight: l.weight,
                arc_in: l.orientation.has_out(),
                arc_out: l.orientation.has_in(),
            };
            for (pi, p) in Property::ALL.iter().enumerate() {
                if let Update::Value(x) = p.incremental_update(before[pi][l.to.0], &removal) {
                    prop_assert_eq!(x, p.value(&net, l.to, &view), "{}", p);
                }
            }
        }
    }

    #[test]
    fn level_core_matches_exhaustive_search(net in network(false, 10), level in 0u32..12) {
        let dense = Dense::of(&net);
        let t = level as f64;
        let pairs = [
            (Property::Degree, Oracle::Degree),
            (Property::WeightSum, Oracle::WeightSum),
            (Property::WeightMax, Oracle::WeightMax),
            (Property::Triangles, Oracle::Triangles),
        ];
        for (p, o) in pairs {
            let sets = dense.maximal_level_sets(o, t);
            prop_assert_eq!(sets.len(), 1);
            let r = p_core_at_level(&net, &p, t, &PeelOptions::default()).unwrap();
            prop_assert_eq!(ids(&r.members), sets[0].clone());
        }
    }

    #[test]
    fn level_cores_are_maximal(net in network(false, 16), level in 0u32..10) {
        let t = level as f64;
        for p in MONOTONE_UNDIRECTED {
            let r = p_core_at_level(&net, &p, t, &PeelOptions::default()).unwrap();
            let mut mask = vec![false; net.n()];
            for v in &r.members { mask[v.0] = true; }
            let view = SubsetView::from_mask(&net, mask.clone());
            for v in &r.members {
                prop_assert!(p.value(&net, *v, &view) >= t);
            }
            for x in net.vertices().filter(|x| !mask[x.0]) {
                let mut grown = mask.clone();
                grown[x.0] = true;
                let view = SubsetView::from_mask(&net, grown.clone());
                let violated = net.vertices().filter(|v| grown[v.0]).any(|v| p.value(&net, v, &view) < t);
                prop_assert!(violated, "{} could be added to the {} core at {}", x, p, t);
            }
        }
    }

    #[test]
    fn hierarchy_is_consistent_with_levels(net in network(false, 24)) {
        for p in MONOTONE_UNDIRECTED {
            let h = core_hierarchy(&net, &p, &PeelOptions::default()).unwrap();
            let order = h.removal_order();
            prop_assert!(order.windows(2).all(|w| h.core_number(w[0]) <= h.core_number(w[1])));
            let mut levels: Vec<f64> = h.core_numbers().to_vec();
            levels.extend([0.5, 1.5, 100.0]);
            let mut previous: Option<Vec<VertexId>> = None;
            levels.sort_by(f64::total_cmp);
            levels.dedup();
            for t in levels {
                let members = p_core_at_level(&net, &p, t, &PeelOptions::default()).unwrap().members;
                prop_assert_eq!(&members, &h.members_at_level(t));
                if let Some(prev) = &previous {
                    prop_assert!(members.iter().all(|v| prev.contains(v)));
                }
                previous = Some(members);
            }
        }
    }

    #[test]
    fn degree_hierarchy_matches_definition(net in network(false, 16)) {
        let want = naive_degree_cores(&Dense::of(&net));
        let heap = core_hierarchy(&net, &Property::Degree, &PeelOptions::default()).unwrap();
        let linear = degree_cores_linear(&net, DegreeMode::Total).unwrap();
        let want_u64: Vec<u64> = want.iter().map(|&c| c as u64).collect();
        prop_assert_eq!(heap.integral().unwrap(), want_u64.clone());
        prop_assert_eq!(linear.integral().unwrap(), want_u64);
    }

    #[test]
    fn scalar_types_agree(net in network(false, 20)) {
        let lines: Vec<_> = net.lines().iter().map(|l| (l.source.0, l.target.0, l.weight as f32)).collect();
        let narrow = Network::<f32>::from_indexed(net.labels().to_vec(), &lines, false, BuildOptions::default()).unwrap();
        for p in [Property::Degree, Property::WeightSum, Property::Triangles] {
            let wide = core_hierarchy(&net, &p, &PeelOptions::default()).unwrap();
            let small = core_hierarchy(&narrow, &p, &PeelOptions::default()).unwrap();
            prop_assert_eq!(wide.integral(), small.integral());
        }
    }

    #[test]
    fn coloring_respects_bound(net in network(false, 30)) {
        let h = core_hierarchy(&net, &Property::Degree, &PeelOptions::default()).unwrap();
        let c = greedy_color_by_core(&net, &h).unwrap();
        prop_assert!(c.is_proper(&net));
        prop_assert!(c.colors_used as f64 <= 1.0 + h.max_core().unwrap());
    }

    #[test]
    fn cliques_lie_in_cores(net in network(false, 14)) {
        let dense = Dense::of(&net);
        let core = naive_degree_cores(&dense);
        let cliques = dense.maximal_cliques();
        for c in &cliques {
            prop_assert!(c.iter().all(|&v| core[v] + 1 >= c.len()));
        }
        let omega = cliques.iter().map(Vec::len).max().unwrap();
        let found = max_clique_localized(&net, None).unwrap();
        prop_assert_eq!(found.len(), omega);
    }

    #[test]
    fn segmentation_counts_cover_all(net in network(false, 20)) {
        let h = core_hierarchy(&net, &Property::WeightSum, &PeelOptions::default()).unwrap();
        let table = segmentation(&h, &Thresholds::geometric(1.0, 2.0, 12).unwrap());
        prop_assert_eq!(table.total(), net.n());
        let zeros = h.core_numbers().iter().filter(|&&c| c == 0.0).count();
        prop_assert_eq!(table.at_or_below_start, zeros);
        prop_assert_eq!(table.above_last, 0);
    }

    #[test]
    fn net_round_trip(
        n in 0usize..8,
        labels in prop::collection::vec(prop::option::of("[a-z\" \\\\]{0,6}"), 8),
        arcs in prop::collection::vec((1usize..9, 1usize..9, -1e6f64..1e6), 0..6),
        edges in prop::collection::vec((1usize..9, 1usize..9, 0u32..100), 0..6),
    ) {
        let clamp = |x: usize| if n == 0 { None } else { Some((x - 1) % n + 1) };
        let doc = NetDocument {
            vertex_count: n,
            labels: labels.into_iter().take(n).map(|l| l.filter(|s| !s.is_empty())).collect(),
            arcs: arcs.into_iter().filter_map(|(u, v, w)| Some((clamp(u)?, clamp(v)?, w))).collect(),
            edges: edges.into_iter().filter_map(|(u, v, w)| Some((clamp(u)?, clamp(v)?, w as f64))).collect(),
        };
        let doc = NetDocument { labels: { let mut l = doc.labels.clone(); l.resize(n, None); l }, ..doc };
        let text = write_net(&doc);
        prop_assert_eq!(parse_net::<f64>(&text).unwrap(), doc);
    }
}

#[test]
fn monotone_properties_have_no_counterexamples() {
    let mut rng = common::rng(11);
    for _ in 0..20 {
        let net = common::gnp(&mut rng, 10, 0.4, 9);
        for p in MONOTONE_UNDIRECTED {
            assert!(check_monotonicity(&p, &net, 200, 5).unwrap().is_empty(), "{p}");
        }
        let dir = common::gnp_directed(&mut rng, 10, 0.3);
        for p in [Property::Degree, Property::InDegree, Property::OutDegree, Property::InPlusOut] {
            assert!(check_monotonicity(&p, &dir, 200, 5).unwrap().is_empty(), "{p}");
        }
    }
}

#[test]
fn brute_force_agrees_with_test_oracle_for_average_weight() {
    // non-monotone: several maximal sets are possible
    let net = common::six();
    let dense = Dense::of(&net);
    for t in [1.0, 2.0, 2.5, 3.0, 4.0] {
        let mut lib: Vec<Vec<usize>> = corekit::brute_force_core(&net, &Property::AverageWeight, t)
            .unwrap()
            .iter()
            .map(|s| ids(s))
            .collect();
        let mut ours = dense.maximal_level_sets(Oracle::Average, t);
        lib.sort();
        ours.sort();
        assert_eq!(lib, ours, "level {t}");
    }
}

#[test]
fn deletion_process_agrees_with_heap_for_monotone() {
    let mut rng = common::rng(3);
    for _ in 0..30 {
        let net = common::gnp(&mut rng, 20, 0.25, 5);
        for p in MONOTONE_UNDIRECTED {
            let t = 3.0;
            let mut process = DeletionProcess::new(&net, &p).unwrap();
            let free = process.run_to_level(t, &corekit::TieBreakPolicy::HighestId).unwrap();
            let heap = p_core_at_level(&net, &p, t, &PeelOptions::default()).unwrap().members;
            assert_eq!(free, heap, "{p}");
        }
    }
}

#[test]
fn p0_for_every_shipped_property() {
    let net = common::six();
    let dir = common::gnp_directed(&mut common::rng(1), 6, 0.3);
    for p in Property::ALL {
        let target = if p.degree_mode().is_some_and(|m| m != DegreeMode::Total) { &dir } else { &net };
        let empty = SubsetView::from_members(target, &[]);
        let p0 = VertexProperty::<f64>::empty_value(&p, target);
        for v in target.vertices() {
            assert_eq!(p.value(target, v, &empty), p0, "{p}");
        }
    }
}
