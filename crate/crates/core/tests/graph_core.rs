#![allow(clippy::needless_range_loop)]

mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::{adjacency, graphs, members};
use powerham::{Graph, OrderedClique, VertexSet};

fn brute_cliques(a: &[Vec<bool>], k: usize, within: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let m = within.len();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let vs: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| within[i]).collect();
        if vs.iter().all(|&u| vs.iter().all(|&v| u == v || a[u][v])) {
            out.insert(vs);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(g in graphs(0, 30)) {
        let back = Graph::from_text(&g.to_text()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn adjacency_symmetric_and_loopless(g in graphs(1, 30)) {
        let a = adjacency(&g);
        for u in 0..g.n() {
            prop_assert!(!a[u][u]);
            for v in 0..g.n() {
                prop_assert_eq!(a[u][v], a[v][u]);
            }
            prop_assert_eq!(g.degree(u), a[u].iter().filter(|&&x| x).count());
        }
        prop_assert_eq!(g.edge_count(), g.edges().count());
    }

    #[test]
    fn edge_counts_match_brute_force(g in graphs(1, 16), xm in any::<u64>(), ym in any::<u64>()) {
        let n = g.n();
        let a = adjacency(&g);
        let (xs, ys) = (members(xm, n), members(ym, n));
        let x = VertexSet::from_members(n, &xs).unwrap();
        let y = VertexSet::from_members(n, &ys).unwrap();
        let within = xs.iter().flat_map(|&u| xs.iter().map(move |&v| (u, v))).filter(|&(u, v)| u < v && a[u][v]).count();
        // Ordered pairs, so overlapping sets count both directions.
        let between = xs.iter().flat_map(|&u| ys.iter().map(move |&v| (u, v))).filter(|&(u, v)| a[u][v]).count();
        prop_assert_eq!(g.edges_within(&x).unwrap(), within);
        prop_assert_eq!(g.edges_between(&x, &y).unwrap(), between);
    }

    #[test]
    fn cliques_match_brute_force(g in graphs(1, 12), wm in any::<u64>(), k in 1usize..5) {
        let n = g.n();
        let a = adjacency(&g);
        let ws = members(wm, n);
        let within = VertexSet::from_members(n, &ws).unwrap();
        let listed: Vec<Vec<usize>> = g.list_cliques(k, &within).unwrap().into_iter().map(OrderedClique::into_vec).collect();
        let mut sorted = listed.clone();
        sorted.sort();
        prop_assert_eq!(&listed, &sorted);
        let brute = brute_cliques(&a, k, &ws);
        prop_assert_eq!(listed.into_iter().collect::<BTreeSet<_>>(), brute.clone());
        prop_assert_eq!(g.count_cliques_within(k, &within), brute.len() as u128);
        let all: Vec<usize> = (0..n).collect();
        let unordered = brute_cliques(&a, k, &all).len();
        let factorial: usize = (1..=k).product();
        prop_assert_eq!(g.count_ordered_cliques(k), BigUint::from(unordered * factorial));
    }

    #[test]
    fn common_neighborhood_is_intersection(g in graphs(3, 20)) {
        let a = adjacency(&g);
        for c in g.list_cliques(2, &g.all_vertices()).unwrap().into_iter().take(10) {
            let t = c.vertices().to_vec();
            let common = g.common_neighborhood(&c).unwrap();
            for v in 0..g.n() {
                prop_assert_eq!(common.contains(v), t.iter().all(|&u| a[u][v]));
            }
        }
    }

    #[test]
    fn induced_subgraph_preserves_edges(g in graphs(1, 20), km in any::<u64>()) {
        let n = g.n();
        let keep = VertexSet::from_members(n, &members(km, n)).unwrap();
        let (h, map) = g.induced(&keep);
        prop_assert_eq!(h.n(), keep.len());
        let kept: Vec<usize> = keep.to_vec();
        for (i, &u) in kept.iter().enumerate() {
            prop_assert_eq!(map[i], u);
            for (j, &v) in kept.iter().enumerate() {
                prop_assert_eq!(h.has_edge(i, j), g.has_edge(u, v));
            }
        }
    }
}

#[test]
fn invalid_inputs_rejected() {
    assert!(Graph::from_text("p 3 1\ne 0 3\n").is_err());
    assert!(Graph::from_text("p 3 1\ne 1 1\n").is_err());
    assert!(VertexSet::from_members(3, &[5]).is_err());
    let g = Graph::cycle(5);
    assert!(OrderedClique::new(&g, vec![0, 2]).is_err());
    assert!(OrderedClique::new(&g, vec![0, 1]).is_ok());
}
