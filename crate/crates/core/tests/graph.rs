mod common;

use std::collections::BTreeSet;

use common::*;
use pantscx::graph::samples::*;
use pantscx::{are_isomorphic, enumerate_graphs, is_admissible, CanonicalKey, PantGraph};
use proptest::prelude::*;

#[test]
fn matching_and_stub_oracles_agree() {
    for (g, n) in buildable_up_to(2) {
        assert_eq!(
            matching_classes(g, n),
            multigraph_classes(g, n),
            "({g},{n})"
        );
    }
}

#[test]
fn enumeration_matches_oracle_classes() {
    for (g, n) in buildable_up_to(3) {
        let got: BTreeSet<Multigraph> = enumerate_graphs(g, n)
            .unwrap()
            .iter()
            .map(|x| multigraph_of(x).canonical())
            .collect();
        let graphs = enumerate_graphs(g, n).unwrap();
        assert_eq!(got.len(), graphs.len(), "duplicate class at ({g},{n})");
        assert_eq!(got, multigraph_classes(g, n), "({g},{n})");
    }
}

#[test]
fn enumeration_is_sorted_and_valid() {
    for (g, n) in buildable_up_to(3) {
        let graphs = enumerate_graphs(g, n).unwrap();
        let keys: Vec<CanonicalKey> = graphs.iter().map(|x| x.canonical_key()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for x in &graphs {
            assert!(x.validate().is_empty(), "{}", x.to_text());
        }
    }
}

#[test]
fn excluded_types() {
    for (g, n) in [(0, 0), (0, 1), (0, 2), (1, 0)] {
        assert!(!is_admissible(g, n));
        assert!(enumerate_graphs(g, n).is_err());
    }
}

#[test]
fn keys_agree_with_brute_isomorphism() {
    for (g, n) in buildable_up_to(2) {
        // a few members of every class, straight from the matching oracle
        let mut sample: Vec<PantGraph> = Vec::new();
        let mut per_class = std::collections::BTreeMap::new();
        for x in matching_graphs(g, n) {
            let c = per_class.entry(multigraph_of(&x).canonical()).or_insert(0);
            if *c < 3 {
                *c += 1;
                sample.push(x);
            }
        }
        for a in &sample {
            for b in &sample {
                let brute = brute_isomorphic(a, b);
                assert_eq!(a.canonical_key() == b.canonical_key(), brute);
                assert_eq!(are_isomorphic(a, b), brute);
            }
        }
    }
}

#[test]
fn automorphism_counts_agree_with_brute_force() {
    for (g, n) in buildable_up_to(3) {
        if 3 * trivalent(g, n) + n as usize > 14 {
            continue;
        }
        for x in enumerate_graphs(g, n).unwrap() {
            assert_eq!(
                x.automorphism_count(),
                isomorphisms(&x, &x),
                "{}",
                x.to_text()
            );
        }
    }
}

#[test]
fn couplings_are_distinct() {
    let a = coupling(1, 2, 3, 4);
    let b = coupling(1, 3, 2, 4);
    assert!(!brute_isomorphic(&a, &b));
    assert_ne!(a.canonical_key(), b.canonical_key());
    assert_eq!(a.canonical_key(), coupling(4, 3, 2, 1).canonical_key());
}

#[test]
fn key_round_trip_rebuilds_an_isomorphic_graph() {
    for (g, n) in buildable_up_to(3) {
        for x in enumerate_graphs(g, n).unwrap() {
            let k = x.canonical_key();
            let (y, _) = PantGraph::from_key(&k);
            assert!(brute_isomorphic(&x, &y));
            assert_eq!(CanonicalKey::from_hex(&k.to_hex()).unwrap(), k);
        }
    }
}

#[test]
fn text_round_trip() {
    for x in [
        tripod(),
        loop_leaf(),
        theta(),
        dumbbell(),
        caterpillar(1, 2, 3, 4, 5),
    ] {
        let t = x.to_text();
        assert_eq!(PantGraph::parse(&t).unwrap(), x);
    }
    let both = format!("{}\n{}", theta().to_text(), dumbbell().to_text());
    assert_eq!(PantGraph::parse_many(&both).unwrap().len(), 2);
    let err = PantGraph::parse("pantgraph g=0 n=3\nedges: 0-x\n").unwrap_err();
    assert_eq!(err.line, 2);
}

#[test]
fn validate_reports_violations() {
    assert!(!cycle(3).validate().is_empty());
    assert!(theta().validate().is_empty());
}

fn any_graph() -> impl Strategy<Value = PantGraph> {
    let pool: Vec<PantGraph> = buildable_up_to(3)
        .into_iter()
        .flat_map(|(g, n)| enumerate_graphs(g, n).unwrap())
        .collect();
    proptest::sample::select(pool)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn key_is_invariant_under_relabeling(
        (x, perm) in any_graph().prop_flat_map(|x| {
            let nd = x.num_darts();
            (Just(x), Just((0..nd).collect::<Vec<usize>>()).prop_shuffle())
        }),
        rot in 0usize..7,
    ) {
        let y = relabel(&x, &perm, rot);
        prop_assert_eq!(x.canonical_key(), y.canonical_key());
        prop_assert_eq!(x.automorphism_count(), y.automorphism_count());
    }

    #[test]
    fn canonical_form_is_idempotent(x in any_graph()) {
        let c = x.canonical_form();
        prop_assert_eq!(c.canonical_form(), c.clone());
        prop_assert!(x.is_isomorphic(&c));
    }
}
