use gainrank::combinatorics::{cycle_records, cyclomatic_number, matching_number, oriented_gain_product};
use gainrank::generators::{
    assign_gains, make_cycle, make_extremal, random_connected_graph, GainKind, GainSetSpec,
};
use gainrank::graph::{parse_gain_graph, serialize_gain_graph};
use gainrank::spectral::{rank, RankMode};
use gainrank::theorems::{Extremal, GraphStructure};
use gainrank::{Gain, GainGraph, SimpleGraph};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = GainKind> {
    prop_oneof![
        Just(GainKind::Trivial),
        Just(GainKind::Signed),
        Just(GainKind::Gaussian),
        (2u64..=12).prop_map(GainKind::Roots),
        Just(GainKind::UniformFloat),
    ]
}

fn fit(n: usize, extra: usize) -> usize {
    extra.min(n * (n - 1) / 2 + 1 - n)
}

fn gain_graph() -> impl Strategy<Value = GainGraph> {
    (1usize..=9, 0usize..=4, kind(), any::<u64>(), any::<u64>()).prop_map(|(n, extra, kind, gs, ss)| {
        let g = random_connected_graph(n, fit(n, extra), gs).unwrap();
        assign_gains(&g, GainSetSpec::new(kind, ss))
    })
}

fn switching(n: usize) -> impl Strategy<Value = Vec<Gain>> {
    prop::collection::vec((0i64..24).prop_map(|p| Gain::root_of_unity(p, 24).unwrap()), n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn switching_preserves_rank_and_cycle_gains((g, s) in gain_graph().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), switching(n))
    })) {
        let h = g.switched(&s);
        prop_assert_eq!(rank(&g, RankMode::Numeric).unwrap(), rank(&h, RankMode::Numeric).unwrap());
        let before = cycle_records(&g, 10_000).unwrap();
        for c in &before {
            let after = oriented_gain_product(&h, &c.vertices).unwrap();
            prop_assert!(after.approx_eq(&c.gain_product, 1e-9));
        }
    }

    #[test]
    fn edge_orientation_does_not_matter(g in gain_graph()) {
        let flipped = GainGraph::new(g.n(), g.edges().iter().map(|e| (e.v, e.u, e.gain.conj()))).unwrap();
        prop_assert_eq!(serialize_gain_graph(&flipped), serialize_gain_graph(&g));
        let text = serialize_gain_graph(&g);
        let back = parse_gain_graph(text.as_bytes()).unwrap();
        prop_assert_eq!(rank(&back, RankMode::Numeric).unwrap(), rank(&g, RankMode::Numeric).unwrap());
    }

    #[test]
    fn derived_graphs_commute_with_underlying(g in gain_graph(), drop in prop::collection::vec(any::<bool>(), 9)) {
        let s: Vec<usize> = (0..g.n()).filter(|&v| drop[v]).collect();
        let a = g.delete_vertices(&s).unwrap();
        let b = g.underlying().delete_vertices(&s).unwrap();
        prop_assert_eq!(&a.parent_ids, &b.parent_ids);
        prop_assert_eq!(a.graph.underlying(), b.graph);

        let comps = a.graph.components();
        let r: usize = comps.iter().map(|c| rank(&c.graph, RankMode::Numeric).unwrap()).sum();
        prop_assert_eq!(r, rank(&a.graph, RankMode::Numeric).unwrap());
        let m: usize = comps.iter().map(|c| matching_number(&c.graph.underlying())).sum();
        prop_assert_eq!(m, matching_number(&a.graph.underlying()));
    }

    #[test]
    fn make_cycle_hits_target(l in 3usize..=16, theta in 0.0f64..std::f64::consts::TAU) {
        let target = Gain::from_radians(theta);
        let c = make_cycle(l, target).unwrap();
        let product = oriented_gain_product(&c, &(0..l).collect::<Vec<_>>()).unwrap();
        prop_assert!((product.value() - target.value()).norm() < 1e-12);
    }

    #[test]
    fn generators_are_reproducible(n in 1usize..=12, extra in 0usize..=5, seed in any::<u64>(), k in kind()) {
        let extra = fit(n, extra);
        let a = random_connected_graph(n, extra, seed).unwrap();
        prop_assert_eq!(&a, &random_connected_graph(n, extra, seed).unwrap());
        prop_assert_eq!(a.edge_count(), n - 1 + extra);
        prop_assert!(a.is_connected());
        prop_assert_eq!(cyclomatic_number(&a), a.edge_count() + 1 - n);
        let spec = GainSetSpec::new(k, seed ^ 0x5eed);
        prop_assert_eq!(serialize_gain_graph(&assign_gains(&a, spec)), serialize_gain_graph(&assign_gains(&a, spec)));
    }

    #[test]
    fn make_extremal_is_reproducible(cycles in 0usize..=2, halves in prop::collection::vec(2usize..=3, 2), seed in any::<u64>()) {
        let halves = &halves[..cycles];
        for (kind, offset) in [(Extremal::Lower, 0), (Extremal::Upper, 1)] {
            let lens: Vec<usize> = halves.iter().map(|h| 2 * h + offset).collect();
            let a = make_extremal(kind, cycles, &lens, seed).unwrap();
            let b = make_extremal(kind, cycles, &lens, seed).unwrap();
            prop_assert_eq!(serialize_gain_graph(&a), serialize_gain_graph(&b));
            let v = GraphStructure::new(&a.underlying()).verdict(&a).unwrap();
            prop_assert_eq!(v.holds(kind), (true, true));
        }
    }
}

#[test]
fn unit_cycles_follow_the_undirected_rule() {
    for l in 3..=12 {
        let c = GainGraph::with_unit_gains(&SimpleGraph::cycle(l));
        let v = GraphStructure::new(&c.underlying()).verdict(&c).unwrap();
        let lower = l % 4 == 0;
        assert_eq!(v.holds(Extremal::Lower), (lower, lower), "C{l}");
        let upper = l % 2 == 1;
        assert_eq!(v.holds(Extremal::Upper), (upper, upper), "C{l}");
        let expected_rank = if lower { l - 2 } else { l };
        assert_eq!(v.rank, expected_rank, "C{l}");
    }
}
