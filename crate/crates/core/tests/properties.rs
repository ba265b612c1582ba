use chibound::bounds::BoundValue;
use chibound::corpus::{canonical_key, enumerate_graphs, read_graph6, write_graph6, CorpusSpec, Filter};
use chibound::graph::{Graph, VertexSet};
use chibound::structures::{
    enumerate_balloons, enumerate_bicliques, in_class_h, is_minimal_cutset, minimal_cutsets, EnumerationCap,
};
use chibound::verify::{Counterexample, GraphResult, Observations, Outcome, VerificationReport};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    graph(max_n).prop_filter("connected", |g| g.is_connected())
}

fn subset_of(n: usize) -> impl Strategy<Value = VertexSet> {
    subsequence((0..n).collect::<Vec<_>>(), 0..=n).prop_map(|vs| vs.into_iter().collect())
}

fn graph_result() -> impl Strategy<Value = GraphResult> {
    (0u8..4, any::<bool>(), 0u64..4, 0u64..50, 0u64..6, "[a-c]{1,3}").prop_map(|(kind, held, c, m, b, g6)| {
        let outcome = match kind {
            0 => Outcome::Pass,
            1 => Outcome::Fail(Box::new(Counterexample {
                graph_g6: g6,
                witnesses: serde_json::json!({ "m": m }),
                measured: m,
                threshold: BoundValue::from_u64(b),
                threshold_kind: "exact".into(),
            })),
            2 => Outcome::Skipped(format!("reason {b}")),
            _ => Outcome::Inconclusive("cap".into()),
        };
        let mut observations = Observations::default();
        observations.count("graphs", c);
        observations.max("largest", m);
        observations.bucket("spread", b);
        GraphResult { outcome, hypotheses_held: held, observations }
    })
}

fn absorb_all(results: impl IntoIterator<Item = GraphResult>) -> VerificationReport {
    let mut r = VerificationReport::empty("check", "corpus");
    for x in results {
        r.absorb(x);
    }
    r
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trips(g in graph(30)) {
        let s = write_graph6(&g);
        let back = read_graph6(&s).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph6(&back), s);
    }

    #[test]
    fn report_merge_ignores_order_and_grouping(
        results in proptest::collection::vec(graph_result(), 0..40),
        seed in any::<u64>(),
        split in any::<prop::sample::Index>(),
    ) {
        let straight = absorb_all(results.clone());
        let mut shuffled = results.clone();
        let len = shuffled.len();
        for i in (1..len).rev() {
            let j = (seed.rotate_left(i as u32) as usize ^ i.wrapping_mul(7919)) % (i + 1);
            shuffled.swap(i, j);
        }
        prop_assert_eq!(&absorb_all(shuffled.clone()), &straight);

        let at = if len == 0 { 0 } else { split.index(len + 1) };
        let (a, b) = shuffled.split_at(at);
        let mut left = absorb_all(a.to_vec());
        left.merge(absorb_all(b.to_vec()));
        prop_assert_eq!(&left, &straight);
        let mut right = absorb_all(b.to_vec());
        right.merge(absorb_all(a.to_vec()));
        prop_assert_eq!(&right, &straight);
    }

    #[test]
    fn canonical_key_ignores_labelling(g in graph(9), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, (seed >> (i % 60)) as usize % (i + 1));
        }
        prop_assert_eq!(canonical_key(&g.permuted(&perm)), canonical_key(&g));
    }

    #[test]
    fn class_h_is_hereditary(g in graph(9), p in 1usize..3, keep in subset_of(9)) {
        prop_assume!(in_class_h(&g, p).unwrap().free);
        let keep = keep & g.vertices();
        prop_assume!(!keep.is_empty());
        let sub = g.induced(keep).unwrap();
        prop_assert!(in_class_h(&sub.graph, p).unwrap().free);
    }

    #[test]
    fn minimal_cutsets_match_the_component_criterion(g in connected(8)) {
        let cap = EnumerationCap::default();
        let listed = minimal_cutsets(&g, &cap).unwrap();
        prop_assert!(!listed.truncated);
        let mut expected = Vec::new();
        for mask in 1u64..(1 << g.n()) {
            let x = VertexSet::from_bits(mask);
            let rest = g.vertices() - x;
            let comps = g.components_within(rest);
            if comps.len() >= 2 && x.iter().all(|v| comps.iter().all(|c| !(g.adj(v) & *c).is_empty())) {
                expected.push(x);
            }
        }
        expected.sort_by(|a, b| a.size_lex_cmp(*b));
        prop_assert_eq!(&listed.cutsets, &expected);
        for x in &listed.cutsets {
            prop_assert!(is_minimal_cutset(&g, *x));
        }
    }

    #[test]
    fn balloons_revalidate(g in connected(8), p in 1usize..3, t in 2usize..4) {
        let list = enumerate_balloons(&g, p, t, &EnumerationCap::default()).unwrap();
        for b in &list.balloons {
            prop_assert_eq!(b.validate(&g, t), Ok(()));
            prop_assert!(b.value >= 1);
        }
    }

    #[test]
    fn bicliques_revalidate_and_are_maximal(g in graph(8), t in 1usize..3) {
        let list = enumerate_bicliques(&g, t, &EnumerationCap::default()).unwrap();
        for b in &list.bicliques {
            prop_assert_eq!(b.validate(&g), Ok(()));
            prop_assert!(!b.y_set.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn filter_order_does_not_change_the_corpus(seed in any::<u64>()) {
        let mut filters: Vec<Filter> =
            ["H:p=1", "free:path:k=5", "nosub:complete:n=4", "free:cycle:k=4"].iter().map(|s| s.parse().unwrap()).collect();
        let base = enumerate_graphs(&CorpusSpec::exhaustive(6).with_filters(filters.clone())).unwrap();
        for i in (1..filters.len()).rev() {
            filters.swap(i, (seed >> (8 * i)) as usize % (i + 1));
        }
        let shuffled = enumerate_graphs(&CorpusSpec::exhaustive(6).with_filters(filters)).unwrap();
        let a: Vec<String> = base.graphs().map(write_graph6).collect();
        let b: Vec<String> = shuffled.graphs().map(write_graph6).collect();
        prop_assert_eq!(a, b);
    }
}
