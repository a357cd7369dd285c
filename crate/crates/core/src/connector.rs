//! Short `k`-paths between two ordered cliques.
//!
//! [`connect`] is an exact search over tuple states: the state is the last
//! `k` vertices placed, and a step appends any vertex adjacent to all of
//! them. Depths are tried shortest first, so the path returned has the
//! fewest inner vertices possible. [`build_rope`] is the randomised
//! construction of the proof: a walk between the two neighbourhoods whose
//! vertices are blown up into `k`-cliques one at a time.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{input, Error, Result};
use crate::graph::{Graph, OrderedClique};
use crate::kpath::KPath;
use crate::ratio::Ratio;
use crate::rng::SplitMix64;
use crate::walks::DeltaSchedule;

pub const MAX_INNER_CAP: usize = 24;
pub const DEFAULT_NODE_BUDGET: u64 = 400_000;
pub const ROPE_RETRIES: usize = 32;

/// `min((⌊8/μ⌋ + 2)k, 24)`.
pub fn practical_max_inner(mu: &Ratio, k: usize) -> usize {
    if mu.is_zero() || mu.is_negative() {
        return MAX_INNER_CAP;
    }
    let l = Ratio(mu.0.recip()).floor_mul(8);
    ((l + 2) * k).min(MAX_INNER_CAP)
}

#[derive(Clone, Debug)]
pub struct ConnectRequest {
    pub x_end: OrderedClique,
    pub y_end: OrderedClique,
    pub k: usize,
    pub max_inner: usize,
    pub forbidden: VertexSet,
    /// When set, inner vertices must come from here.
    pub allowed_inner: Option<VertexSet>,
    pub seed: u64,
    /// Search nodes expanded before giving up.
    pub node_budget: u64,
}

impl ConnectRequest {
    pub fn new(g: &Graph, x_end: OrderedClique, y_end: OrderedClique, k: usize, max_inner: usize) -> ConnectRequest {
        ConnectRequest {
            x_end,
            y_end,
            k,
            max_inner,
            forbidden: VertexSet::empty(g.n()),
            allowed_inner: None,
            seed: 0,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.k == 0 {
            return input("k must be at least 1");
        }
        if self.x_end.order() != self.k || self.y_end.order() != self.k {
            return input(format!("both ends must have exactly k = {} vertices", self.k));
        }
        self.x_end.validate(g)?;
        self.y_end.validate(g)?;
        g.check_set(&self.forbidden)?;
        if let Some(a) = &self.allowed_inner {
            g.check_set(a)?;
        }
        let xs = self.x_end.to_set(g.n());
        let ys = self.y_end.to_set(g.n());
        if !xs.is_disjoint(&ys) {
            return input("ends overlap");
        }
        if !self.forbidden.is_disjoint(&xs) || !self.forbidden.is_disjoint(&ys) {
            return input("an end vertex is forbidden");
        }
        Ok(())
    }

    /// Vertices usable as inner vertices.
    fn pool(&self, g: &Graph) -> VertexSet {
        let mut pool = match &self.allowed_inner {
            Some(a) => a.clone(),
            None => g.all_vertices(),
        };
        pool.subtract(&self.forbidden);
        pool.subtract(&self.x_end.to_set(g.n()));
        pool.subtract(&self.y_end.to_set(g.n()));
        pool
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    y: &'a [usize],
    pool: VertexSet,
    dist: Vec<usize>,
    seq: Vec<usize>,
    used: VertexSet,
    budget: u64,
    rng: SplitMix64,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn closes(&self) -> bool {
        let len = self.seq.len();
        self.y.iter().enumerate().all(|(j, &yj)| {
            self.seq[len - (self.k - j)..].iter().all(|&s| self.g.has_edge(s, yj))
        })
    }

    fn candidates(&mut self, remaining: usize) -> Vec<usize> {
        let tail = &self.seq[self.seq.len() - self.k..];
        let mut c = self.g.common_neighbors_of(tail);
        c.intersect_with(&self.pool);
        c.subtract(&self.used);
        let mut out: Vec<usize> = c.iter().filter(|&w| self.dist[w] < remaining).collect();
        self.rng.shuffle(&mut out);
        out.sort_by_key(|&w| self.dist[w]);
        out
    }

    /// Places `remaining` more inner vertices, then tries to close.
    fn dfs(&mut self, remaining: usize) -> Outcome {
        if self.budget == 0 {
            return Outcome::OutOfBudget;
        }
        self.budget -= 1;
        if remaining == 0 {
            return if self.closes() { Outcome::Found } else { Outcome::Exhausted };
        }
        let mut out_of_budget = false;
        for w in self.candidates(remaining) {
            self.seq.push(w);
            self.used.insert(w);
            match self.dfs(remaining - 1) {
                Outcome::Found => return Outcome::Found,
                Outcome::OutOfBudget => out_of_budget = true,
                Outcome::Exhausted => {}
            }
            self.used.remove(w);
            self.seq.pop();
            if out_of_budget {
                return Outcome::OutOfBudget;
            }
        }
        Outcome::Exhausted
    }
}

/// Distance, inside `pool`, from each vertex to the set of pool vertices
/// adjacent to every end vertex. `usize::MAX` when unreachable.
fn distance_to_targets(g: &Graph, pool: &VertexSet, y: &[usize]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut targets = g.common_neighbors_of(y);
    targets.intersect_with(pool);
    let mut queue: VecDeque<usize> = targets.iter().collect();
    for &t in &queue {
        dist[t] = 0;
    }
    while let Some(v) = queue.pop_front() {
        for u in g.row(v).intersection(pool).iter() {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// A `k`-path from `x_end` to `y_end` with the fewest inner vertices, at most
/// `max_inner`, or `None` if none exists or the node budget ran out.
pub fn connect(g: &Graph, req: &ConnectRequest) -> Result<Option<KPath>> {
    req.check(g)?;
    let pool = req.pool(g);
    let dist = distance_to_targets(g, &pool, req.y_end.vertices());
    let mut search = Search {
        g,
        k: req.k,
        y: req.y_end.vertices(),
        pool,
        dist,
        seq: req.x_end.vertices().to_vec(),
        used: VertexSet::empty(g.n()),
        budget: req.node_budget,
        rng: SplitMix64::stream(req.seed, 0xC0),
    };
    for m in 0..=req.max_inner {
        match search.dfs(m) {
            Outcome::Found => {
                let mut vs = std::mem::take(&mut search.seq);
                vs.extend_from_slice(req.y_end.vertices());
                return Ok(Some(KPath::unchecked(req.k, vs)));
            }
            Outcome::OutOfBudget => return Ok(None),
            Outcome::Exhausted => {}
        }
    }
    Ok(None)
}

pub const ENUMERATION_BUDGET: u64 = 50_000_000;

/// Exact number of `(x⃗, y⃗; k)`-paths with exactly `m` inner vertices that
/// respect the request's forbidden and allowed sets.
pub fn enumerate_connections(g: &Graph, req: &ConnectRequest, m: usize) -> Result<u128> {
    req.check(g)?;
    fn count(s: &mut Search<'_>, remaining: usize) -> Result<u128> {
        if s.budget == 0 {
            return Err(Error::Size {
                operation: "connection enumeration",
                n: s.g.n(),
                limit: ENUMERATION_BUDGET as usize,
            });
        }
        s.budget -= 1;
        if remaining == 0 {
            return Ok(s.closes() as u128);
        }
        let tail = &s.seq[s.seq.len() - s.k..];
        let mut c = s.g.common_neighbors_of(tail);
        c.intersect_with(&s.pool);
        c.subtract(&s.used);
        let mut total = 0;
        for w in c.iter() {
            if s.dist[w] >= remaining {
                continue;
            }
            s.seq.push(w);
            s.used.insert(w);
            total += count(s, remaining - 1)?;
            s.used.remove(w);
            s.seq.pop();
        }
        Ok(total)
    }
    let pool = req.pool(g);
    let dist = distance_to_targets(g, &pool, req.y_end.vertices());
    let mut s = Search {
        g,
        k: req.k,
        y: req.y_end.vertices(),
        pool,
        dist,
        seq: req.x_end.vertices().to_vec(),
        used: VertexSet::empty(g.n()),
        budget: ENUMERATION_BUDGET,
        rng: SplitMix64::new(0),
    };
    count(&mut s, m)
}

/// Parts `Z_0, …, Z_{ℓ+1}`: the two ends, then `ℓ` inner parts of which the
/// first `blown` are `k`-cliques and the rest single vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rope {
    pub k: usize,
    pub parts: Vec<Vec<usize>>,
    pub blown: usize,
}

impl Rope {
    pub fn inner_parts(&self) -> usize {
        self.parts.len() - 2
    }

    /// Size-`k` parts are cliques and consecutive parts are completely joined.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.parts.len() < 2 || self.blown > self.inner_parts() {
            return input("malformed rope");
        }
        for (i, part) in self.parts.iter().enumerate() {
            let want = if i == 0 || i + 1 == self.parts.len() || i <= self.blown { self.k } else { 1 };
            if part.len() != want || !g.is_clique(part) {
                return input(format!("rope part {i} is not a {want}-clique"));
            }
        }
        for w in self.parts.windows(2) {
            if !w[0].iter().all(|&a| w[1].iter().all(|&b| g.has_edge(a, b))) {
                return input("consecutive rope parts are not completely joined");
            }
        }
        Ok(())
    }
}

/// Uniformly random walk `v_1, …, v_len` inside `pool` with `v_1 ∈ from` and
/// `v_len ∈ to`, or `None` if there is none.
fn sample_walk(g: &Graph, pool: &VertexSet, from: &VertexSet, to: &VertexSet, len: usize, rng: &mut SplitMix64) -> Option<Vec<usize>> {
    let n = g.n();
    // ways[j][v]: normalised number of walks of j+1 vertices starting at v ending in `to`.
    let mut ways: Vec<Vec<f64>> = Vec::with_capacity(len);
    ways.push((0..n).map(|v| if to.contains(v) && pool.contains(v) { 1.0 } else { 0.0 }).collect());
    for j in 1..len {
        let prev = &ways[j - 1];
        let mut next: Vec<f64> = (0..n)
            .map(|v| {
                if pool.contains(v) {
                    g.row(v).iter().map(|u| prev[u]).sum()
                } else {
                    0.0
                }
            })
            .collect();
        let scale = next.iter().cloned().fold(0.0, f64::max);
        if scale > 0.0 {
            next.iter_mut().for_each(|x| *x /= scale);
        }
        ways.push(next);
    }
    let pick = |cands: Vec<usize>, weights: &[f64], rng: &mut SplitMix64| -> Option<usize> {
        let total: f64 = cands.iter().map(|&v| weights[v]).sum();
        if total <= 0.0 {
            return None;
        }
        let mut r = rng.unit_f64() * total;
        for &v in &cands {
            r -= weights[v];
            if r < 0.0 {
                return Some(v);
            }
        }
        cands.iter().rev().find(|&&v| weights[v] > 0.0).copied()
    };
    let first = pick(from.intersection(pool).to_vec(), &ways[len - 1], rng)?;
    let mut walk = vec![first];
    for j in (0..len - 1).rev() {
        let last = *walk.last().expect("nonempty");
        let next = pick(g.row(last).intersection(pool).to_vec(), &ways[j], rng)?;
        walk.push(next);
    }
    Some(walk)
}

/// Builds a rope between the ends by sampling a walk from `N(x⃗)` to `N(y⃗)`
/// and blowing up its first `a_target` vertices (all of them when `None`)
/// into `k`-cliques.
pub fn build_rope(
    g: &Graph,
    x_end: &OrderedClique,
    y_end: &OrderedClique,
    k: usize,
    schedule: &DeltaSchedule,
    a_target: Option<usize>,
    seed: u64,
) -> Result<Option<Rope>> {
    let req = ConnectRequest::new(g, x_end.clone(), y_end.clone(), k, 0);
    req.check(g)?;
    let pool = req.pool(g);
    let from = g.common_neighbors_of(x_end.vertices());
    let to = g.common_neighbors_of(y_end.vertices());
    let dist = distance_to_targets(g, &pool, y_end.vertices());
    let Some(shortest) = from.intersection(&pool).iter().map(|v| dist[v]).min().filter(|&d| d != usize::MAX) else {
        return Ok(None);
    };
    let max_len = schedule.levels + 2;
    let mut rng = SplitMix64::stream(seed, 0x20BE);
    'attempt: for attempt in 0..ROPE_RETRIES {
        let len = (shortest + 1 + attempt / 4).min(max_len.max(shortest + 1));
        let Some(walk) = sample_walk(g, &pool, &from, &to, len, &mut rng) else {
            continue;
        };
        let mut parts: Vec<Vec<usize>> = vec![x_end.vertices().to_vec()];
        parts.extend(walk.iter().map(|&v| vec![v]));
        parts.push(y_end.vertices().to_vec());
        let target = a_target.unwrap_or(len).min(len);
        let mut used = req.x_end.to_set(g.n());
        used.union_with(&req.y_end.to_set(g.n()));
        for a in 0..target {
            let mut room = g.common_neighbors_of(&parts[a]);
            room.intersect_with(&g.common_neighbors_of(&parts[a + 2]));
            room.intersect_with(&pool);
            room.subtract(&used);
            let mut cliques = Vec::new();
            let _ = g.for_each_clique(k, &room, |c| {
                cliques.push(c.to_vec());
                ControlFlow::Continue(())
            });
            let Some(c) = rng.choose(&cliques) else { continue 'attempt };
            let mut c = c.clone();
            rng.shuffle(&mut c);
            c.iter().for_each(|&v| {
                used.insert(v);
            });
            parts[a + 1] = c;
        }
        return Ok(Some(Rope { k, parts, blown: target }));
    }
    Ok(None)
}

/// The concatenated parts of a fully blown-up rope, or `None` if a vertex repeats.
pub fn rope_to_path(rope: &Rope) -> Result<Option<KPath>> {
    if rope.blown != rope.inner_parts() {
        return input(format!(
            "rope has {} of {} inner parts blown up",
            rope.blown,
            rope.inner_parts()
        ));
    }
    let vs: Vec<usize> = rope.parts.concat();
    let mut sorted = vs.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    Ok(Some(KPath::unchecked(rope.k, vs)))
}
