mod common;

use proptest::prelude::*;

use common::{adjacency, graphs, members};
use powerham::kpath::validate_sequence;
use powerham::pathcover::{build_clique_hypergraph, cover_with_paths};
use powerham::{Ratio, VertexSet};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn edges_are_cliques_and_degrees_agree(g in graphs(1, 12), k in 1usize..4) {
        let h = build_clique_hypergraph(&g, k).unwrap();
        let edges = h.edges();
        prop_assert_eq!(edges.len() as u128, h.edge_count());
        let a = adjacency(&g);
        for e in &edges {
            prop_assert_eq!(e.len(), k + 1);
            prop_assert!(e.iter().all(|&u| e.iter().all(|&v| u == v || a[u][v])));
        }
        // An ordered k-tuple's degree is the number of edges containing it.
        for t in h.active_tuples().into_iter().take(20) {
            let containing = edges.iter().filter(|e| t.iter().all(|v| e.contains(v))).count();
            prop_assert_eq!(h.degree(&t) as usize, containing);
        }
    }

    #[test]
    fn pruning_leaves_high_degree_tuples(g in graphs(4, 14), k in 1usize..4, t in 1u32..6) {
        let full = build_clique_hypergraph(&g, k).unwrap();
        let before = full.edge_count();
        let h = full.prune(t);
        prop_assert!(h.edge_count() <= before);
        for tuple in h.active_tuples() {
            prop_assert!(h.degree(&tuple) >= t);
        }
        for e in h.edges() {
            prop_assert!(h.is_edge(&e));
        }
    }

    #[test]
    fn greedy_path_is_long_and_valid(g in graphs(6, 30), k in 1usize..4, seed in any::<u64>()) {
        let t = Ratio::new(1, 10).ceil_mul(g.n()) as u32;
        let h = build_clique_hypergraph(&g, k).unwrap().prune(t);
        prop_assume!(!h.is_empty());
        let p = h.greedy_tight_path(seed).unwrap();
        prop_assert!(p.len() >= t as usize + k);
        prop_assert!(validate_sequence(&g, k, &p.vertices).is_ok());
    }

    #[test]
    fn cover_partitions_the_rest(g in graphs(4, 30), k in 1usize..4, xm in any::<u64>(), stop in 0usize..6, seed in any::<u64>()) {
        let n = g.n();
        let excluded = VertexSet::from_members(n, &members(xm & 0x0F0F_0F0F, n)).unwrap();
        let cover = cover_with_paths(&g, k, &Ratio::new(1, 10), &excluded, stop, seed).unwrap();
        let mut seen = excluded.clone();
        for p in &cover.paths {
            prop_assert!(p.validate(&g).is_ok());
            for &v in &p.vertices {
                prop_assert!(seen.insert(v), "vertex {} used twice", v);
            }
        }
        for &v in &cover.leftover {
            prop_assert!(seen.insert(v));
        }
        prop_assert_eq!(seen.len(), n);
        prop_assert_eq!(cover.reached_stop, cover.leftover.len() <= stop);
    }
}
