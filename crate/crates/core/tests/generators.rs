#![allow(clippy::needless_range_loop)]

mod common;

use proptest::prelude::*;

use common::adjacency;
use powerham::generators::{
    clique_complement, complete_multipartite, gnp, random_bipartite, two_cliques_sizes, two_overlapping_cliques, GenSpec,
};
use powerham::Ratio;

fn fractions() -> impl Strategy<Value = Ratio> {
    (1i64..20, 1i64..20).prop_filter("proper", |(a, b)| a < b).prop_map(|(a, b)| Ratio::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_cliques_structure(n in 2usize..40, mu in fractions()) {
        let Ok((a, s, b)) = two_cliques_sizes(n, &mu) else { return Ok(()) };
        prop_assert_eq!(a + s + b, n);
        prop_assert_eq!(s, mu.floor_mul(n));
        let g = two_overlapping_cliques(n, &mu).unwrap();
        let in_a = |v: usize| v < a + s;
        let in_b = |v: usize| v >= a;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let same = (in_a(u) && in_a(v)) || (in_b(u) && in_b(v));
                    prop_assert_eq!(g.has_edge(u, v), same);
                }
            }
        }
    }

    #[test]
    fn multipartite_edges_between_parts(parts in prop::collection::vec(1usize..6, 1..5)) {
        let g = complete_multipartite(&parts).unwrap();
        let part: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &p)| std::iter::repeat_n(i, p)).collect();
        let n = part.len();
        prop_assert_eq!(g.n(), n);
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(g.has_edge(u, v), u != v && part[u] != part[v]);
            }
        }
    }

    #[test]
    fn random_families_are_reproducible(n in 0usize..40, p in fractions(), seed in any::<u64>()) {
        prop_assert_eq!(gnp(n, &p, seed).unwrap(), gnp(n, &p, seed).unwrap());
        let bip = random_bipartite(n, &p, seed).unwrap();
        prop_assert_eq!(&bip, &random_bipartite(n, &p, seed).unwrap());
        let half = n / 2;
        for (u, v) in bip.edges() {
            prop_assert!(u < half && v >= half);
        }
    }

    #[test]
    fn clique_complement_structure(n in 1usize..30, mu in fractions()) {
        let g = clique_complement(n, &mu).unwrap();
        let independent = (Ratio(Ratio::one().0 - &mu.0)).floor_mul(n);
        let a = adjacency(&g);
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(a[u][v], u != v && (u >= independent || v >= independent));
            }
        }
    }

    #[test]
    fn spec_json_round_trip(n in 1usize..30, p in fractions(), seed in any::<u64>()) {
        let spec = GenSpec::Gnp { n, p: p.clone(), seed };
        let json = serde_json::to_string(&spec).unwrap();
        let back: GenSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.build().unwrap(), gnp(n, &p, seed).unwrap());
    }
}

#[test]
fn extreme_probabilities() {
    assert_eq!(gnp(9, &Ratio::zero(), 1).unwrap().edge_count(), 0);
    assert_eq!(gnp(9, &Ratio::one(), 1).unwrap().edge_count(), 36);
    assert!(gnp(9, &Ratio::new(3, 2), 1).is_err());
}

#[test]
fn invalid_parameters() {
    assert!(complete_multipartite(&[2, 0]).is_err());
    assert!(two_overlapping_cliques(12, &Ratio::zero()).is_err());
    assert_eq!(two_overlapping_cliques(12, &Ratio::one()).unwrap().edge_count(), 66);
    assert_eq!(complete_multipartite(&[1]).unwrap().edge_count(), 0);
}
