#![allow(dead_code)]

use proptest::prelude::*;

use powerham::generators::gnp;
use powerham::{Graph, Ratio};

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Seeded random graphs with `n` in the given range and a density drawn
/// from a handful of fractions.
pub fn graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0usize..5, any::<u64>()).prop_map(|(n, p, seed)| {
        let (a, b) = [(1, 5), (2, 5), (1, 2), (3, 4), (9, 10)][p];
        gnp(n, &Ratio::new(a, b), seed).unwrap()
    })
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}
