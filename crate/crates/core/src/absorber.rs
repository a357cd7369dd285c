//! Absorbers and the absorbing path.
//!
//! A `v`-absorber is an ordered `2k`-clique inside `N(v)` whose two halves
//! are connectable. Placed as `2k` consecutive vertices of a `k`-path it can
//! take `v` at its midpoint without changing the path's ends. The same
//! tuple serves every vertex whose neighbourhood contains it, so usability
//! is indexed per vertex rather than fixed at sampling time.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::connector::{connect, ConnectRequest, DEFAULT_NODE_BUDGET};
use crate::error::{input, Error, Result};
use crate::graph::{Graph, OrderedClique};
use crate::kpath::KPath;
use crate::properties::{connect_threshold, is_connectable};
use crate::ratio::Ratio;
use crate::rng::{Coin, SplitMix64};

pub const DEFAULT_PER_VERTEX_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VAbsorber {
    pub v: usize,
    pub tuple: Vec<usize>,
}

impl VAbsorber {
    pub fn k(&self) -> usize {
        self.tuple.len() / 2
    }

    pub fn x_half(&self) -> &[usize] {
        &self.tuple[..self.k()]
    }

    pub fn y_half(&self) -> &[usize] {
        &self.tuple[self.k()..]
    }

    /// Whether the tuple can absorb `u`.
    pub fn usable_for(&self, g: &Graph, u: usize) -> bool {
        self.tuple.iter().all(|&t| g.has_edge(t, u))
    }

    /// Clique inside `N(v)` with both halves meeting the threshold.
    pub fn validate(&self, g: &Graph, threshold: usize) -> Result<()> {
        if self.tuple.is_empty() || !self.tuple.len().is_multiple_of(2) {
            return input("absorber tuple must have even positive length");
        }
        if !g.is_clique(&self.tuple) || !self.usable_for(g, self.v) {
            return input(format!("{:?} is not a clique in N({})", self.tuple, self.v));
        }
        if !is_connectable(g, self.x_half(), threshold) || !is_connectable(g, self.y_half(), threshold) {
            return input(format!("{:?} has a half that is not connectable", self.tuple));
        }
        Ok(())
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("pivot has a successor");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Up to `limit` `v`-absorbers: the orderings of each `2k`-clique of `N(v)`
/// (cliques lexicographic, orderings lexicographic) whose halves are
/// `ζ`-connectable.
pub fn find_v_absorbers(g: &Graph, v: usize, k: usize, zeta: &Ratio, limit: usize) -> Result<Vec<VAbsorber>> {
    g.check_vertex(v)?;
    if k == 0 {
        return input("k must be at least 1");
    }
    let threshold = connect_threshold(zeta, g.n());
    let nv = g.row(v).clone();
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    let _ = g.for_each_clique(2 * k, &nv, |c| {
        let mut perm = c.to_vec();
        loop {
            if is_connectable(g, &perm[..k], threshold) && is_connectable(g, &perm[k..], threshold) {
                out.push(VAbsorber { v, tuple: perm.clone() });
                if out.len() >= limit {
                    return ControlFlow::Break(());
                }
            }
            if !next_permutation(&mut perm) {
                return ControlFlow::Continue(());
            }
        }
    });
    Ok(out)
}

/// Random `size`-clique inside `room` by greedy random extension.
fn random_clique(g: &Graph, room: &VertexSet, size: usize, rng: &mut SplitMix64) -> Option<Vec<usize>> {
    let mut cand = room.clone();
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let members = cand.to_vec();
        let &w = rng.choose(&members)?;
        out.push(w);
        cand.intersect_with(g.row(w));
    }
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyStats {
    pub candidates: usize,
    pub kept: usize,
    pub discarded: usize,
    pub discard_rate: f64,
    /// Over all vertices, the number of members usable for that vertex.
    pub min_usable: usize,
    pub mean_usable: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbsorberFamily {
    pub k: usize,
    pub members: Vec<VAbsorber>,
    /// `usable[u]`: members whose tuple lies in `N(u)` and avoids `u`.
    pub usable: Vec<Vec<usize>>,
    pub stats: FamilyStats,
}

#[derive(Clone, Debug)]
pub struct FamilyOptions {
    pub per_vertex_cap: usize,
    /// Keep at most this many members, chosen greedily for coverage.
    pub max_members: Option<usize>,
    /// Vertices that may not appear in any member.
    pub avoid: Option<VertexSet>,
}

impl Default for FamilyOptions {
    fn default() -> FamilyOptions {
        FamilyOptions {
            per_vertex_cap: DEFAULT_PER_VERTEX_CAP,
            max_members: None,
            avoid: None,
        }
    }
}

fn usable_index(g: &Graph, members: &[VAbsorber]) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|u| {
            (0..members.len())
                .filter(|&i| !members[i].tuple.contains(&u) && members[i].usable_for(g, u))
                .collect()
        })
        .collect()
}

fn stats(candidates: usize, kept: usize, usable: &[Vec<usize>]) -> FamilyStats {
    let n = usable.len().max(1);
    FamilyStats {
        candidates,
        kept,
        discarded: candidates - kept,
        discard_rate: if candidates == 0 { 0.0 } else { (candidates - kept) as f64 / candidates as f64 },
        min_usable: usable.iter().map(Vec::len).min().unwrap_or(0),
        mean_usable: usable.iter().map(Vec::len).sum::<usize>() as f64 / n as f64,
    }
}

/// For each vertex, up to `per_vertex_cap` random absorbers are drawn and each
/// kept with probability `p`; members meeting an earlier member are dropped.
pub fn sample_family(g: &Graph, k: usize, zeta: &Ratio, p: &Ratio, seed: u64, opts: &FamilyOptions) -> Result<AbsorberFamily> {
    if k == 0 {
        return input("k must be at least 1");
    }
    if p.is_negative() || !p.in_unit_interval() {
        return input(format!("p = {p} must lie in [0, 1]"));
    }
    let n = g.n();
    let threshold = connect_threshold(zeta, n);
    let coin = Coin::new(p);
    let mut rng = SplitMix64::stream(seed, 0xAB5);
    let mut taken = opts.avoid.clone().unwrap_or_else(|| VertexSet::empty(n));
    let mut members = Vec::new();
    let mut candidates = 0;
    for v in 0..n {
        let room = g.row(v).difference(opts.avoid.as_ref().unwrap_or(&VertexSet::empty(n)));
        let mut found = 0;
        for _ in 0..4 * opts.per_vertex_cap {
            if found == opts.per_vertex_cap {
                break;
            }
            let Some(tuple) = random_clique(g, &room, 2 * k, &mut rng) else { break };
            if !is_connectable(g, &tuple[..k], threshold) || !is_connectable(g, &tuple[k..], threshold) {
                continue;
            }
            found += 1;
            if !coin.flip(&mut rng) {
                continue;
            }
            candidates += 1;
            if tuple.iter().any(|&t| taken.contains(t)) {
                continue;
            }
            tuple.iter().for_each(|&t| {
                taken.insert(t);
            });
            members.push(VAbsorber { v, tuple });
        }
    }
    if let Some(cap) = opts.max_members {
        members = select_for_coverage(g, members, cap);
    }
    let usable = usable_index(g, &members);
    let stats = stats(candidates, members.len(), &usable);
    Ok(AbsorberFamily { k, members, usable, stats })
}

/// Greedily keeps `cap` members, each time the one adding the most to the
/// least-covered vertices. Original order is preserved.
fn select_for_coverage(g: &Graph, members: Vec<VAbsorber>, cap: usize) -> Vec<VAbsorber> {
    if members.len() <= cap {
        return members;
    }
    let n = g.n();
    let usable: Vec<Vec<usize>> = members
        .iter()
        .map(|m| (0..n).filter(|&u| !m.tuple.contains(&u) && m.usable_for(g, u)).collect())
        .collect();
    let mut cover = vec![0usize; n];
    let mut chosen = vec![false; members.len()];
    for _ in 0..cap {
        let best = (0..members.len())
            .filter(|&i| !chosen[i])
            .max_by(|&a, &b| {
                let score = |i: usize| usable[i].iter().map(|&u| 1.0 / (1 + cover[u]) as f64).sum::<f64>();
                score(a).total_cmp(&score(b)).then(b.cmp(&a))
            })
            .expect("more members than cap");
        chosen[best] = true;
        usable[best].iter().for_each(|&u| cover[u] += 1);
    }
    members.into_iter().zip(chosen).filter(|(_, c)| *c).map(|(m, _)| m).collect()
}

/// Where member `member`'s tuple sits in the absorbing path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub member: usize,
    pub start: usize,
    pub spent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbsorbingPath {
    pub path: KPath,
    pub members: Vec<VAbsorber>,
    pub segments: Vec<Segment>,
    /// Start positions of extra `k`-cliques stitched into the path.
    pub anchors: Vec<usize>,
    /// Members that could not be connected and were left out.
    pub dropped: Vec<usize>,
}

impl AbsorbingPath {
    pub fn x_end(&self) -> &[usize] {
        self.path.start()
    }

    pub fn y_end(&self) -> &[usize] {
        self.path.end()
    }

    /// Path valid, segments disjoint and matching their tuples.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.path.validate(g)?;
        let mut last_end = 0;
        for s in &self.segments {
            let t = &self.members[s.member].tuple;
            if s.start < last_end || self.path.vertices.get(s.start..s.start + t.len()) != Some(&t[..]) {
                return input(format!("segment of member {} is misplaced", s.member));
            }
            last_end = s.start + t.len();
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct AssemblyOptions {
    pub max_inner: usize,
    /// Inner connection vertices must come from here when set.
    pub allowed: Option<VertexSet>,
    /// Leave out members that cannot be connected instead of failing.
    pub drop_failures: bool,
    pub node_budget: u64,
    /// Extra `k`-cliques to thread into the path after the absorbers.
    pub anchors: Vec<Vec<usize>>,
}

impl AssemblyOptions {
    pub fn new(max_inner: usize) -> AssemblyOptions {
        AssemblyOptions {
            max_inner,
            allowed: None,
            drop_failures: false,
            node_budget: DEFAULT_NODE_BUDGET,
            anchors: Vec::new(),
        }
    }
}

/// Connects the members (ascending target vertex) and anchors into one
/// `k`-path, never reusing a vertex of the path built so far or of a block
/// still to come.
pub fn build_absorbing_path(g: &Graph, family: &AbsorberFamily, seed: u64, opts: &AssemblyOptions) -> Result<AbsorbingPath> {
    let k = family.k;
    let n = g.n();
    let mut order: Vec<usize> = (0..family.members.len()).collect();
    order.sort_by_key(|&i| (family.members[i].v, i));
    // Blocks: (member index or None for an anchor, vertices).
    let mut blocks: Vec<(Option<usize>, Vec<usize>)> =
        order.iter().map(|&i| (Some(i), family.members[i].tuple.clone())).collect();
    blocks.extend(opts.anchors.iter().map(|a| (None, a.clone())));
    if blocks.is_empty() {
        return Err(Error::NoCliques);
    }
    let mut reserved = VertexSet::empty(n);
    for (_, b) in &blocks {
        b.iter().for_each(|&v| {
            reserved.insert(v);
        });
    }
    let mut rng = SplitMix64::stream(seed, 0xA55E);
    let mut path: Vec<usize> = Vec::new();
    let mut segments = Vec::new();
    let mut anchors = Vec::new();
    let mut dropped = Vec::new();
    for (idx, (member, block)) in blocks.iter().enumerate() {
        if path.is_empty() {
            place(&mut path, &mut segments, &mut anchors, *member, block, 0);
            continue;
        }
        let mut forbidden = reserved.clone();
        path.iter().for_each(|&v| {
            forbidden.insert(v);
        });
        let x_end = path[path.len() - k..].to_vec();
        let y_end = block[..k].to_vec();
        x_end.iter().chain(&y_end).for_each(|&v| {
            forbidden.remove(v);
        });
        let mut req = ConnectRequest::new(g, OrderedClique::unchecked(x_end.clone()), OrderedClique::unchecked(y_end), k, opts.max_inner);
        req.forbidden = forbidden;
        req.allowed_inner = opts.allowed.clone();
        req.seed = rng.next_u64();
        req.node_budget = opts.node_budget;
        match connect(g, &req)? {
            Some(conn) => {
                let inner = &conn.vertices[k..conn.len() - k];
                path.extend_from_slice(inner);
                let at = path.len();
                place(&mut path, &mut segments, &mut anchors, *member, block, at);
            }
            None if opts.drop_failures => {
                block.iter().for_each(|&v| {
                    reserved.remove(v);
                });
                match member {
                    Some(m) => dropped.push(*m),
                    None => {
                        return Err(Error::Assembly {
                            from: x_end[k - 1],
                            to: block[0],
                        })
                    }
                }
            }
            None => {
                let _ = idx;
                return Err(Error::Assembly {
                    from: x_end[k - 1],
                    to: block[0],
                });
            }
        }
    }
    Ok(AbsorbingPath {
        path: KPath::unchecked(k, path),
        members: family.members.clone(),
        segments,
        anchors,
        dropped,
    })
}

fn place(path: &mut Vec<usize>, segments: &mut Vec<Segment>, anchors: &mut Vec<usize>, member: Option<usize>, block: &[usize], at: usize) {
    path.extend_from_slice(block);
    match member {
        Some(m) => segments.push(Segment { member: m, start: at, spent: false }),
        None => anchors.push(at),
    }
}

/// Maximum matching of `targets` to free segments usable for them, by
/// augmenting paths. Returns `(vertex, segment index)` pairs and the
/// unmatched vertices.
pub fn match_to_segments(g: &Graph, pa: &AbsorbingPath, targets: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>) {
    let adj: Vec<Vec<usize>> = targets
        .iter()
        .map(|&v| {
            (0..pa.segments.len())
                .filter(|&s| !pa.segments[s].spent && pa.members[pa.segments[s].member].usable_for(g, v) && !pa.members[pa.segments[s].member].tuple.contains(&v))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; pa.segments.len()];
    fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &s in &adj[i] {
            if std::mem::replace(&mut seen[s], true) {
                continue;
            }
            if owner[s].is_none_or(|j| augment(j, adj, owner, seen)) {
                owner[s] = Some(i);
                return true;
            }
        }
        false
    }
    let mut unmatched = Vec::new();
    for (i, &v) in targets.iter().enumerate() {
        let mut seen = vec![false; pa.segments.len()];
        if !augment(i, &adj, &mut owner, &mut seen) {
            unmatched.push(v);
        }
    }
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(s, o)| o.map(|i| (targets[i], s)))
        .collect();
    pairs.sort_unstable();
    (pairs, unmatched)
}

/// Inserts each `(vertex, segment)` at the segment midpoint of `seq`, where
/// segment starts are positions in `seq`.
pub fn insert_at_segments(seq: &[usize], k: usize, starts: &[usize], pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut at: Vec<(usize, usize)> = pairs.iter().map(|&(v, s)| (starts[s] + k, v)).collect();
    at.sort_unstable();
    let mut out = Vec::with_capacity(seq.len() + at.len());
    let mut next = at.iter().peekable();
    for (i, &v) in seq.iter().enumerate() {
        while let Some(&&(pos, w)) = next.peek() {
            if pos != i {
                break;
            }
            out.push(w);
            next.next();
        }
        out.push(v);
    }
    out
}

/// Swallows `x_set` into the absorbing path, one vertex per free segment.
pub fn absorb(g: &Graph, pa: &AbsorbingPath, x_set: &VertexSet) -> Result<KPath> {
    g.check_set(x_set)?;
    if pa.path.vertices.iter().any(|&v| x_set.contains(v)) {
        return input("absorbed vertices must lie outside the path");
    }
    let targets = x_set.to_vec();
    let (pairs, unmatched) = match_to_segments(g, pa, &targets);
    if let Some(&v) = unmatched.first() {
        return Err(Error::Capacity { vertex: v });
    }
    let starts: Vec<usize> = pa.segments.iter().map(|s| s.start).collect();
    Ok(KPath::unchecked(pa.path.k, insert_at_segments(&pa.path.vertices, pa.path.k, &starts, &pairs)))
}
