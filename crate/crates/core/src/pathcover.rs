//! The clique hypergraph, its degree pruning, greedy tight paths and the
//! iterated almost-perfect cover by `k`-paths.
//!
//! Hyperedges are the `(k+1)`-cliques inside a vertex set `L`. They are not
//! stored: an edge is alive when it is such a clique and has not been pruned,
//! and the degree of a `k`-set is its common neighbourhood inside `L` minus
//! its pruned edges. Only the pruned edges and the degree table are kept.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::kpath::KPath;
use crate::properties::connect_threshold;
use crate::ratio::Ratio;
use crate::rng::SplitMix64;

const KEY_BITS: u32 = 12;
/// Edges of up to this many vertices fit in a 128-bit key.
pub const MAX_EDGE_SIZE: usize = 10;
pub const RESTARTS: usize = 8;

type Key = u128;

fn key_of(sorted: &[usize]) -> Key {
    sorted
        .iter()
        .fold(0, |acc, &v| (acc << KEY_BITS) | v as Key)
}

fn sorted_key(vs: &[usize]) -> Key {
    let mut s = vs.to_vec();
    s.sort_unstable();
    key_of(&s)
}

fn decode(mut key: Key, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = (key & ((1 << KEY_BITS) - 1)) as usize;
        key >>= KEY_BITS;
    }
    out
}

#[derive(Clone, Debug)]
pub struct CliqueHypergraph<'g> {
    g: &'g Graph,
    k: usize,
    within: VertexSet,
    degree: HashMap<Key, u32>,
    removed: HashSet<Key>,
    edge_count: u128,
}

pub fn build_clique_hypergraph(g: &Graph, k: usize) -> Result<CliqueHypergraph<'_>> {
    CliqueHypergraph::build(g, k, &g.all_vertices())
}

impl<'g> CliqueHypergraph<'g> {
    /// Hypergraph of `(k+1)`-cliques of `g` lying inside `within`.
    pub fn build(g: &'g Graph, k: usize, within: &VertexSet) -> Result<CliqueHypergraph<'g>> {
        if k == 0 {
            return input("k must be at least 1");
        }
        if k + 1 > MAX_EDGE_SIZE {
            return Err(Error::Size {
                operation: "clique hypergraph",
                n: k + 1,
                limit: MAX_EDGE_SIZE,
            });
        }
        g.check_set(within)?;
        let mut degree = HashMap::new();
        let mut total: u128 = 0;
        let _ = g.for_each_clique(k, within, |t| {
            let d = g.common_neighbors_of(t).intersection_len(within) as u32;
            if d > 0 {
                degree.insert(key_of(t), d);
                total += d as u128;
            }
            ControlFlow::Continue(())
        });
        Ok(CliqueHypergraph {
            g,
            k,
            within: within.clone(),
            degree,
            removed: HashSet::new(),
            edge_count: total / (k as u128 + 1),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> u128 {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    /// Number of alive hyperedges containing the `k`-set `t`.
    pub fn degree(&self, t: &[usize]) -> u32 {
        self.degree.get(&sorted_key(t)).copied().unwrap_or(0)
    }

    /// `e` (any order) is a `(k+1)`-clique inside the vertex set and not pruned.
    pub fn is_edge(&self, e: &[usize]) -> bool {
        e.len() == self.k + 1
            && e.iter().all(|&v| v < self.g.n() && self.within.contains(v))
            && self.g.is_clique(e)
            && !self.removed.contains(&sorted_key(e))
    }

    /// Alive hyperedges as ascending tuples, lexicographically ordered.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let _ = self.g.for_each_clique(self.k + 1, &self.within, |e| {
            if !self.removed.contains(&key_of(e)) {
                out.push(e.to_vec());
            }
            ControlFlow::Continue(())
        });
        out
    }

    /// `k`-sets of positive degree, ascending.
    pub fn active_tuples(&self) -> Vec<Vec<usize>> {
        let mut keys: Vec<Key> = self.degree.iter().filter(|(_, &d)| d > 0).map(|(&k, _)| k).collect();
        keys.sort_unstable();
        keys.into_iter().map(|key| decode(key, self.k)).collect()
    }

    /// Removes, until none is left, every edge containing a `k`-set of degree
    /// at most `threshold`.
    pub fn prune(self, threshold: u32) -> CliqueHypergraph<'g> {
        self.prune_with_order(threshold, None)
    }

    /// [`prune`](Self::prune) with the initial worklist shuffled by `order_seed`.
    /// The result does not depend on the order.
    pub fn prune_with_order(mut self, threshold: u32, order_seed: Option<u64>) -> CliqueHypergraph<'g> {
        let mut work: Vec<Key> = self
            .degree
            .iter()
            .filter(|(_, &d)| d > 0 && d <= threshold)
            .map(|(&k, _)| k)
            .collect();
        work.sort_unstable();
        if let Some(seed) = order_seed {
            SplitMix64::new(seed).shuffle(&mut work);
        }
        let k = self.k;
        while let Some(t) = work.pop() {
            if self.degree.get(&t).copied().unwrap_or(0) == 0 {
                continue;
            }
            let tuple = decode(t, k);
            let ext = self.g.common_neighbors_of(&tuple).intersection(&self.within);
            for w in ext.iter() {
                let mut e = tuple.clone();
                e.push(w);
                e.sort_unstable();
                let ek = key_of(&e);
                if !self.removed.insert(ek) {
                    continue;
                }
                self.edge_count -= 1;
                for skip in 0..=k {
                    let mut sub = e.clone();
                    sub.remove(skip);
                    let sk = key_of(&sub);
                    let d = self.degree.get_mut(&sk).expect("subset of an alive edge");
                    *d -= 1;
                    if sk != t && *d > 0 && *d <= threshold {
                        work.push(sk);
                    }
                }
            }
        }
        self.degree.retain(|_, d| *d > 0);
        self
    }

    /// Vertices `w` extending the `k`-set `t` to an alive edge, excluding `used`.
    fn extensions(&self, t: &[usize], used: &VertexSet) -> Vec<usize> {
        let mut cand = self.g.common_neighbors_of(t);
        cand.intersect_with(&self.within);
        cand.subtract(used);
        let mut e = t.to_vec();
        e.push(0);
        cand.iter()
            .filter(|&w| {
                e[self.k] = w;
                !self.removed.contains(&sorted_key(&e))
            })
            .collect()
    }

    fn best_extension(&self, end: &[usize], used: &VertexSet, front: bool) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for w in self.extensions(end, used) {
            let mut next: Vec<usize> = if front {
                end[..self.k - 1].to_vec()
            } else {
                end[1..].to_vec()
            };
            next.push(w);
            let d = self.degree(&next);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, w));
            }
        }
        best.map(|(_, w)| w)
    }

    fn grow(&self, start: Vec<usize>) -> Vec<usize> {
        let k = self.k;
        let mut path = std::collections::VecDeque::from(start);
        let mut used = VertexSet::collect(self.g.n(), path.iter().copied());
        let (mut back_open, mut front_open) = (true, true);
        let mut back_turn = true;
        while back_open || front_open {
            let at_back = if back_open && front_open { back_turn } else { back_open };
            back_turn = !back_turn;
            if at_back {
                let end: Vec<usize> = path.iter().skip(path.len() - k).copied().collect();
                match self.best_extension(&end, &used, false) {
                    Some(w) => {
                        used.insert(w);
                        path.push_back(w);
                    }
                    None => back_open = false,
                }
            } else {
                let end: Vec<usize> = path.iter().take(k).copied().collect();
                match self.best_extension(&end, &used, true) {
                    Some(w) => {
                        used.insert(w);
                        path.push_front(w);
                    }
                    None => front_open = false,
                }
            }
        }
        path.into()
    }

    /// A tight path that cannot be extended at either end, the longest of
    /// [`RESTARTS`] greedy runs from random hyperedges.
    pub fn greedy_tight_path(&self, seed: u64) -> Result<KPath> {
        let tuples = self.active_tuples();
        if tuples.is_empty() {
            return Err(Error::NoCliques);
        }
        let mut rng = SplitMix64::stream(seed, 0x7A7);
        let empty = VertexSet::empty(self.g.n());
        let mut best: Vec<usize> = Vec::new();
        for _ in 0..RESTARTS {
            let t = &tuples[rng.index(tuples.len())];
            let ext = self.extensions(t, &empty);
            let Some(&w) = rng.choose(&ext) else { continue };
            let mut start = t.clone();
            start.push(w);
            let path = self.grow(start);
            if path.len() > best.len() {
                best = path;
            }
        }
        if best.is_empty() {
            return Err(Error::NoCliques);
        }
        Ok(KPath::unchecked(self.k, best))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCover {
    pub paths: Vec<KPath>,
    pub leftover: Vec<usize>,
    /// Whether the uncovered part shrank to `stop_size` or below.
    pub reached_stop: bool,
}

/// Repeatedly extracts a greedy tight path from the pruned hypergraph on the
/// uncovered, non-excluded vertices `L`, with threshold `⌈ζ|L|⌉`, until
/// `|L| ≤ stop_size` or no hyperedge survives.
pub fn cover_with_paths(
    g: &Graph,
    k: usize,
    zeta: &Ratio,
    excluded: &VertexSet,
    stop_size: usize,
    seed: u64,
) -> Result<PathCover> {
    g.check_set(excluded)?;
    if zeta.is_negative() || !zeta.in_unit_interval() {
        return input(format!("zeta = {zeta} must lie in [0, 1]"));
    }
    let mut rest = excluded.complement();
    let mut paths = Vec::new();
    let mut round = 0u64;
    let reached_stop = loop {
        if rest.len() <= stop_size {
            break true;
        }
        let h = CliqueHypergraph::build(g, k, &rest)?;
        let threshold = connect_threshold(zeta, rest.len()) as u32;
        let h = h.prune(threshold);
        let path = match h.greedy_tight_path(seed.wrapping_add(round)) {
            Ok(p) => p,
            Err(Error::NoCliques) => break false,
            Err(e) => return Err(e),
        };
        round += 1;
        for &v in &path.vertices {
            rest.remove(v);
        }
        paths.push(path);
    };
    Ok(PathCover {
        paths,
        leftover: rest.to_vec(),
        reached_stop,
    })
}
