//! Undirected simple graphs with bit-row adjacency, clique enumeration and
//! the plain-text edge-list format.
//!
//! Text format: a header line `p <n> <m>` followed by exactly `m` lines
//! `e <u> <v>` (0-indexed). Blank lines and lines starting with `#` are
//! ignored. [`Graph::to_text`] writes edges sorted by `(u, v)` with `u < v`,
//! so reading and writing a canonical file reproduces it byte for byte.

use std::ops::ControlFlow;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{input, Error, Result};
use crate::ratio::factorial;

pub const MAX_VERTICES: usize = 4096;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    edge_count: usize,
}

/// Mutable staging area for building a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    rows: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<GraphBuilder> {
        if n > MAX_VERTICES {
            return Err(Error::Size {
                operation: "graph construction",
                n,
                limit: MAX_VERTICES,
            });
        }
        Ok(GraphBuilder {
            n,
            rows: (0..n).map(|_| VertexSet::empty(n)).collect(),
        })
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u >= self.n || v >= self.n {
            return input(format!("edge ({u}, {v}) out of range for n = {}", self.n));
        }
        if u == v {
            return input(format!("loop at vertex {u}"));
        }
        let fresh = self.rows[u].insert(v);
        self.rows[v].insert(u);
        Ok(fresh)
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn build(self) -> Graph {
        let degree_sum: usize = self.rows.iter().map(VertexSet::len).sum();
        Graph {
            n: self.n,
            rows: self.rows,
            edge_count: degree_sum / 2,
        }
    }
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            if !b.add_edge(u, v)? {
                return input(format!("duplicate edge ({u}, {v})"));
            }
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).expect("vertex limit").build()
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).expect("vertex limit");
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge_unchecked(u, v);
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).expect("vertex limit");
        if n >= 3 {
            for v in 0..n {
                b.add_edge_unchecked(v, (v + 1) % n);
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).expect("vertex limit");
        for v in 1..n {
            b.add_edge_unchecked(v - 1, v);
        }
        b.build()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub(crate) fn row_words(&self, v: usize) -> &[u64] {
        self.rows[v].words()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            input(format!("vertex {v} out of range for n = {}", self.n))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            input(format!(
                "vertex set over universe {} used with graph on {} vertices",
                s.universe(),
                self.n
            ))
        } else {
            Ok(())
        }
    }

    /// `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.rows[v].clone())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Common neighbourhood of arbitrary vertices (no clique check).
    pub(crate) fn common_neighbors_of(&self, vs: &[usize]) -> VertexSet {
        let mut s = VertexSet::full(self.n);
        for &v in vs {
            s.intersect_with(&self.rows[v]);
        }
        s
    }

    /// `⋂_{v ∈ t} N(v)`; members of `t` are never included.
    pub fn common_neighborhood(&self, t: &OrderedClique) -> Result<VertexSet> {
        t.validate(self)?;
        Ok(self.common_neighbors_of(t.vertices()))
    }

    /// `e(U)`: edges with both endpoints in `u`.
    pub fn edges_within(&self, u: &VertexSet) -> Result<usize> {
        self.check_set(u)?;
        Ok(u.iter().map(|v| self.rows[v].intersection_len(u)).sum::<usize>() / 2)
    }

    /// `e(X, Y)`: ordered pairs `(x, y) ∈ X × Y` with `xy` an edge.
    pub fn edges_between(&self, x: &VertexSet, y: &VertexSet) -> Result<usize> {
        self.check_set(x)?;
        self.check_set(y)?;
        Ok(x.iter().map(|v| self.rows[v].intersection_len(y)).sum())
    }

    pub fn min_degree(&self) -> Result<usize> {
        (0..self.n)
            .map(|v| self.degree(v))
            .min()
            .ok_or_else(|| Error::Input("minimum degree of the empty graph".into()))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &a)| {
            a < self.n && vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b))
        })
    }

    /// Visits every `k`-clique inside `within` once, as an ascending tuple, in
    /// lexicographic order. The visitor may stop the scan early.
    pub fn for_each_clique<F>(&self, k: usize, within: &VertexSet, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if k == 0 {
            return visit(&[]);
        }
        let mut stack = Vec::with_capacity(k);
        self.clique_rec(k, within.words(), &mut stack, &mut visit)
    }

    fn clique_rec<F>(&self, left: usize, cand: &[u64], stack: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        for (wi, &word) in cand.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let v = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                stack.push(v);
                let flow = if left == 1 {
                    visit(stack)
                } else {
                    let next = later_common(cand, self.row_words(v), v);
                    self.clique_rec(left - 1, &next, stack, visit)
                };
                stack.pop();
                flow?;
            }
        }
        ControlFlow::Continue(())
    }

    /// All `k`-cliques inside `within`, ascending tuples, lexicographic order.
    pub fn list_cliques(&self, k: usize, within: &VertexSet) -> Result<Vec<OrderedClique>> {
        self.check_set(within)?;
        let mut out = Vec::new();
        let _ = self.for_each_clique(k, within, |c| {
            out.push(OrderedClique { vertices: c.to_vec() });
            ControlFlow::Continue(())
        });
        Ok(out)
    }

    /// Number of `k`-cliques (unordered) inside `within`.
    pub fn count_cliques_within(&self, k: usize, within: &VertexSet) -> u128 {
        match k {
            0 => 1,
            _ => self.count_rec(k, within.words()),
        }
    }

    fn count_rec(&self, left: usize, cand: &[u64]) -> u128 {
        if left == 1 {
            return cand.iter().map(|w| w.count_ones() as u128).sum();
        }
        let mut total = 0u128;
        for (wi, &word) in cand.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let v = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                if left == 2 {
                    total += and_later_count(cand, self.row_words(v), v) as u128;
                } else {
                    let next = later_common(cand, self.row_words(v), v);
                    total += self.count_rec(left - 1, &next);
                }
            }
        }
        total
    }

    /// Ordered copies of `K_k`: `k!` times the number of `k`-cliques.
    pub fn count_ordered_cliques(&self, k: usize) -> BigUint {
        if k > self.n {
            return BigUint::from(0u32);
        }
        let unordered = self.count_cliques_within(k, &self.all_vertices());
        BigUint::from(unordered) * factorial(k as u32)
    }

    /// Induced subgraph on `keep`, relabelled `0..|keep|` in ascending order;
    /// also returns the new-to-old vertex map.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let map = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut b = GraphBuilder::new(map.len()).expect("subgraph within limit");
        for (i, &v) in map.iter().enumerate() {
            for u in self.rows[v].iter() {
                let j = index[u];
                if j != usize::MAX && j > i {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        (b.build(), map)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(16 + self.edge_count * 12);
        s.push_str(&format!("p {} {}\n", self.n, self.edge_count));
        for (u, v) in self.edges() {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let mut builder: Option<GraphBuilder> = None;
        let mut declared = 0usize;
        let mut seen = 0usize;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap_or("");
            let nums: Vec<usize> = parts
                .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad integer {t:?}"))))
                .collect::<Result<_>>()?;
            match (tag, builder.as_mut()) {
                ("p", None) => {
                    if nums.len() != 2 {
                        return Err(err("header must be `p <n> <m>`".into()));
                    }
                    builder = Some(GraphBuilder::new(nums[0]).map_err(|e| err(e.to_string()))?);
                    declared = nums[1];
                }
                ("p", Some(_)) => return Err(err("duplicate header".into())),
                ("e", Some(b)) => {
                    if nums.len() != 2 {
                        return Err(err("edge line must be `e <u> <v>`".into()));
                    }
                    let fresh = b.add_edge(nums[0], nums[1]).map_err(|e| err(e.to_string()))?;
                    if !fresh {
                        return Err(err(format!("duplicate edge ({}, {})", nums[0], nums[1])));
                    }
                    seen += 1;
                }
                ("e", None) => return Err(err("edge before header".into())),
                _ => return Err(err(format!("unknown line tag {tag:?}"))),
            }
        }
        let b = builder.ok_or(Error::Parse {
            line: 0,
            message: "missing `p <n> <m>` header".into(),
        })?;
        if seen != declared {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares {declared} edges but {seen} were listed"),
            });
        }
        Ok(b.build())
    }
}

/// `cand ∩ row` restricted to vertices greater than `v`.
#[inline]
fn later_common(cand: &[u64], row: &[u64], v: usize) -> Vec<u64> {
    let wv = v >> 6;
    let mut next = vec![0u64; cand.len()];
    for i in wv..cand.len() {
        next[i] = cand[i] & row[i];
    }
    next[wv] &= high_mask(v);
    next
}

#[inline]
fn and_later_count(cand: &[u64], row: &[u64], v: usize) -> usize {
    let wv = v >> 6;
    let mut c = ((cand[wv] & row[wv]) & high_mask(v)).count_ones() as usize;
    for i in wv + 1..cand.len() {
        c += (cand[i] & row[i]).count_ones() as usize;
    }
    c
}

#[inline]
fn high_mask(v: usize) -> u64 {
    let b = v & 63;
    if b == 63 {
        0
    } else {
        u64::MAX << (b + 1)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n = {}, m = {})", self.n, self.edge_count)
    }
}

/// An ordered tuple of distinct, pairwise adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrderedClique {
    vertices: Vec<usize>,
}

impl OrderedClique {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<OrderedClique> {
        let c = OrderedClique { vertices };
        c.validate(g)?;
        Ok(c)
    }

    pub(crate) fn unchecked(vertices: Vec<usize>) -> OrderedClique {
        OrderedClique { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.vertices
    }

    pub(crate) fn validate(&self, g: &Graph) -> Result<()> {
        for &v in &self.vertices {
            g.check_vertex(v)?;
        }
        if !g.is_clique(&self.vertices) {
            return input(format!("{:?} is not a clique", self.vertices));
        }
        Ok(())
    }

    pub fn to_set(&self, n: usize) -> VertexSet {
        VertexSet::collect(n, self.vertices.iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, m: &[usize]) -> VertexSet {
        VertexSet::from_members(n, m).unwrap()
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(Graph::complete(4).neighbors(0).unwrap().to_vec(), vec![1, 2, 3]);
        assert!(Graph::empty(3).neighbors(1).unwrap().is_empty());
        assert_eq!(Graph::cycle(5).neighbors(2).unwrap().to_vec(), vec![1, 3]);
        assert!(Graph::cycle(5).neighbors(5).is_err());
    }

    #[test]
    fn common_neighborhood_examples() {
        let k5 = Graph::complete(5);
        let t = OrderedClique::new(&k5, vec![0, 1]).unwrap();
        assert_eq!(k5.common_neighborhood(&t).unwrap().to_vec(), vec![2, 3, 4]);
        let c5 = Graph::cycle(5);
        let t = OrderedClique::new(&c5, vec![0, 1]).unwrap();
        assert!(c5.common_neighborhood(&t).unwrap().is_empty());
        assert!(OrderedClique::new(&c5, vec![0, 2]).is_err());
    }

    #[test]
    fn edges_within_examples() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.edges_within(&set(5, &[0, 1, 2])).unwrap(), 3);
        assert_eq!(k5.edges_within(&set(5, &[])).unwrap(), 0);
        assert_eq!(Graph::cycle(6).edges_within(&set(6, &[0, 1, 2, 3])).unwrap(), 3);
    }

    #[test]
    fn edges_between_examples() {
        let mut b = GraphBuilder::new(6).unwrap();
        for a in 0..3 {
            for c in 3..6 {
                b.add_edge(a, c).unwrap();
            }
        }
        let k33 = b.build();
        assert_eq!(k33.edges_between(&set(6, &[0, 1, 2]), &set(6, &[3, 4, 5])).unwrap(), 9);
        let all = k33.all_vertices();
        assert_eq!(k33.edges_between(&all, &all).unwrap(), 2 * k33.edge_count());
        // Ordered pairs (0,1) and (1,2) only.
        let c4 = Graph::cycle(4);
        assert_eq!(c4.edges_between(&set(4, &[0, 1]), &set(4, &[1, 2])).unwrap(), 2);
    }

    #[test]
    fn ordered_clique_counts() {
        assert_eq!(Graph::complete(4).count_ordered_cliques(3), BigUint::from(24u32));
        assert_eq!(Graph::cycle(5).count_ordered_cliques(3), BigUint::from(0u32));
        assert_eq!(Graph::cycle(5).count_ordered_cliques(0), BigUint::from(1u32));
        assert_eq!(Graph::complete(3).count_ordered_cliques(4), BigUint::from(0u32));
    }

    #[test]
    fn list_cliques_examples() {
        let k4 = Graph::complete(4);
        let all = k4.all_vertices();
        let pairs = k4.list_cliques(2, &all).unwrap();
        assert_eq!(pairs.len(), 6);
        assert_eq!(pairs[0].vertices(), &[0, 1]);
        assert_eq!(pairs[5].vertices(), &[2, 3]);
        let u = set(4, &[1, 3]);
        let singles = k4.list_cliques(1, &u).unwrap();
        assert_eq!(singles.len(), 2);
    }

    #[test]
    fn cliques_across_word_boundary() {
        let g = Graph::complete(130);
        let within = set(130, &[62, 63, 64, 65, 129]);
        assert_eq!(g.count_cliques_within(3, &within), 10);
        assert_eq!(g.list_cliques(3, &within).unwrap().len(), 10);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let text = "p 4 3\ne 0 1\ne 0 3\ne 2 3\n";
        let g = Graph::from_text(text).unwrap();
        assert_eq!(g.to_text(), text);
        let noisy = "# comment\np 4 3\n\ne 1 0\ne 3 0\ne 2 3\n";
        assert_eq!(Graph::from_text(noisy).unwrap().to_text(), text);
    }

    #[test]
    fn text_errors() {
        assert!(Graph::from_text("e 0 1\n").is_err());
        assert!(Graph::from_text("p 3 2\ne 0 1\n").is_err());
        assert!(Graph::from_text("p 3 1\ne 0 0\n").is_err());
        assert!(Graph::from_text("p 3 2\ne 0 1\ne 1 0\n").is_err());
        assert!(Graph::from_text("p 3 1\ne 0 7\n").is_err());
        assert!(Graph::from_text("").is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::cycle(6);
        let (h, map) = g.induced(&set(6, &[0, 1, 2, 5]));
        assert_eq!(map, vec![0, 1, 2, 5]);
        assert_eq!(h.edge_count(), 3);
        assert!(h.has_edge(0, 3));
    }
}
