mod common;

use circmap::connectivity::{cutpoints, is_k_connected, two_disjoint_paths, vertex_connectivity};
use circmap::edge_maps::{is_circuit_injection, reconstruct_vertex_isomorphism, EdgeMap, Mode};
use circmap::generators::{permuted_edge_map, random_three_connected};
use circmap::{Graph, VertexId};
use common::{oracle_cutpoints, oracle_k_connected};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..8)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (Just(n), proptest::sample::subsequence(pairs, 0..=m), any::<u64>())
        })
        .prop_map(|(n, mut edges, seed)| {
            // shuffle edge order so ids do not follow vertex order
            use rand::seq::SliceRandom;
            edges.shuffle(&mut circmap::rng::seeded(seed));
            Graph::build(
                (0..n).map(|i| format!("v{i}")),
                edges.iter().map(|&(u, v)| (format!("v{u}"), format!("v{v}"))),
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn connectivity_matches_oracle(g in arb_graph()) {
        for k in 0..5 {
            prop_assert_eq!(is_k_connected(&g, k), oracle_k_connected(&g, k), "k = {}", k);
        }
        let kappa = vertex_connectivity(&g);
        prop_assert!(is_k_connected(&g, kappa));
        prop_assert!(!is_k_connected(&g, kappa + 1));
    }

    #[test]
    fn connectivity_is_monotone(g in arb_graph()) {
        for k in 1..5 {
            if is_k_connected(&g, k) {
                prop_assert!(is_k_connected(&g, k - 1));
            }
        }
    }

    #[test]
    fn cutpoints_match_oracle(g in arb_graph()) {
        let got: Vec<usize> = cutpoints(&g).into_iter().map(|v| v.0).collect();
        let want: Vec<usize> = oracle_cutpoints(&g).into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn two_connected_iff_no_cutpoint(g in arb_graph()) {
        if g.vertex_count() >= 3 {
            prop_assert_eq!(is_k_connected(&g, 2), g.is_connected() && cutpoints(&g).is_empty());
        }
    }

    #[test]
    fn disjoint_paths_in_two_connected_graphs(g in arb_graph(), a in 0usize..8, b in 0usize..8) {
        let n = g.vertex_count();
        prop_assume!(is_k_connected(&g, 2) && a % n != b % n);
        let (a, b) = (VertexId(a % n), VertexId(b % n));
        let (p, q) = two_disjoint_paths(&g, a, b, &[]).unwrap();
        for path in [&p, &q] {
            prop_assert!(path.validate(&g).is_ok());
            prop_assert_eq!((path.start(), path.end()), (a, b));
        }
        let inner = |x: &circmap::Path| x.vertices()[1..x.vertices().len() - 1].to_vec();
        prop_assert!(inner(&p).iter().all(|v| !inner(&q).contains(v)));
        prop_assert!(p.edges() != q.edges());
    }

    #[test]
    fn graph_json_round_trip(g in arb_graph()) {
        let text = g.to_json();
        let back = Graph::from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn edge_map_json_round_trip(g in arb_graph(), seed in any::<u64>()) {
        prop_assume!(g.vertices().all(|v| g.degree(v) > 0));
        let perm = circmap::generators::random_permutation(&g, seed);
        let f = permuted_edge_map(&g, &perm).unwrap();
        let back = EdgeMap::from_json(f.source().clone(), f.target().clone(), &f.to_json()).unwrap();
        prop_assert_eq!(back.assignment(), f.assignment());
        prop_assert_eq!(back.to_json(), f.to_json());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_three_connected_round_trip(n in 4usize..9, seed in any::<u64>(), pseed in any::<u64>()) {
        let g = random_three_connected(n, seed).unwrap();
        prop_assert!(oracle_k_connected(&g, 3));
        let perm = circmap::generators::random_permutation(&g, pseed);
        let f = permuted_edge_map(&g, &perm).unwrap();
        prop_assert!(is_circuit_injection(&f, Mode::exhaustive()).unwrap().is_pass());
        let iso = reconstruct_vertex_isomorphism(&f).unwrap();
        prop_assert_eq!(iso.images(), &perm[..]);
    }
}
