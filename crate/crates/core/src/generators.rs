//! Named example graphs and seeded random instances.
//!
//! Random families draw from [`SplitMix64`] seeded directly with the caller's
//! seed, one [`Coin`] flip per candidate pair in lexicographic `(u, v)` order,
//! so any port of the generator reproduces the same edge set.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::ratio::Ratio;
use crate::rng::{Coin, SplitMix64};

/// Block sizes `(|A∖B|, |A∩B|, |B∖A|)` of [`two_overlapping_cliques`].
pub fn two_cliques_sizes(n: usize, mu: &Ratio) -> Result<(usize, usize, usize)> {
    if mu.is_negative() || mu.is_zero() || !mu.in_unit_interval() {
        return input(format!("mu = {mu} must lie in (0, 1]"));
    }
    let clique = Ratio::new(1, 2).0 + &mu.0 / Ratio::from_integer(2).0;
    let clique = Ratio(clique).ceil_mul(n).min(n);
    let shared = mu.floor_mul(n);
    if shared == 0 && n > 0 {
        return input(format!("mu·n = {mu}·{n} leaves the cliques disjoint"));
    }
    let mut only_a = clique - shared;
    let mut only_b = clique - shared;
    let mut surplus = (2 * clique - shared).saturating_sub(n);
    let cut = surplus.min(only_a);
    only_a -= cut;
    surplus -= cut;
    only_b -= surplus.min(only_b);
    debug_assert_eq!(only_a + shared + only_b, n);
    Ok((only_a, shared, only_b))
}

/// Two cliques `A` and `B` of size `⌈(1/2 + μ/2)n⌉` meeting in `⌊μn⌋` vertices.
/// Vertices are laid out as `A∖B`, then `A∩B`, then `B∖A`.
pub fn two_overlapping_cliques(n: usize, mu: &Ratio) -> Result<Graph> {
    let (a, s, _) = two_cliques_sizes(n, mu)?;
    let mut gb = GraphBuilder::new(n)?;
    let a_end = a + s;
    for u in 0..n {
        for v in u + 1..n {
            let both_a = v < a_end;
            let both_b = u >= a;
            if both_a || both_b {
                gb.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(gb.build())
}

/// Complete multipartite graph with consecutive vertex blocks as parts.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.contains(&0) {
        return input("part sizes must be at least 1");
    }
    let n: usize = parts.iter().sum();
    let part: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    let mut gb = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                gb.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(gb.build())
}

fn probability(p: &Ratio) -> Result<Coin> {
    if p.is_negative() || !p.in_unit_interval() {
        return input(format!("p = {p} must lie in [0, 1]"));
    }
    Ok(Coin::new(p))
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: &Ratio, seed: u64) -> Result<Graph> {
    let coin = probability(p)?;
    let mut rng = SplitMix64::new(seed);
    let mut gb = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if coin.flip(&mut rng) {
                gb.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(gb.build())
}

/// Sides `[0, ⌊n/2⌋)` and `[⌊n/2⌋, n)`; each cross pair is an edge with probability `p`.
pub fn random_bipartite(n: usize, p: &Ratio, seed: u64) -> Result<Graph> {
    let coin = probability(p)?;
    let mut rng = SplitMix64::new(seed);
    let half = n / 2;
    let mut gb = GraphBuilder::new(n)?;
    for u in 0..half {
        for v in half..n {
            if coin.flip(&mut rng) {
                gb.add_edge_unchecked(u, v);
            }
        }
    }
    Ok(gb.build())
}

/// An independent set on the first `⌊(1−μ)n⌋` vertices, completely joined to a
/// clique on the rest.
pub fn clique_complement(n: usize, mu: &Ratio) -> Result<Graph> {
    if mu.is_negative() || mu.is_zero() || !mu.in_unit_interval() {
        return input(format!("mu = {mu} must lie in (0, 1]"));
    }
    let independent = Ratio(Ratio::one().0 - &mu.0).floor_mul(n);
    let mut gb = GraphBuilder::new(n)?;
    for u in 0..n {
        for v in (u + 1).max(independent)..n {
            gb.add_edge_unchecked(u, v);
        }
    }
    Ok(gb.build())
}

/// A reproducible description of a generated graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GenSpec {
    TwoCliques { n: usize, mu: Ratio },
    Multipartite { parts: Vec<usize> },
    Gnp { n: usize, p: Ratio, seed: u64 },
    RandomBipartite { n: usize, p: Ratio, seed: u64 },
    CliqueComplement { n: usize, mu: Ratio },
}

impl GenSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GenSpec::TwoCliques { n, mu } => two_overlapping_cliques(*n, mu),
            GenSpec::Multipartite { parts } => complete_multipartite(parts),
            GenSpec::Gnp { n, p, seed } => gnp(*n, p, *seed),
            GenSpec::RandomBipartite { n, p, seed } => random_bipartite(*n, p, *seed),
            GenSpec::CliqueComplement { n, mu } => clique_complement(*n, mu),
        }
    }
}
