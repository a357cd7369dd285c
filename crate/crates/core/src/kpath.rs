//! `k`-th powers of paths.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::{Graph, OrderedClique};

/// A vertex sequence in which any two vertices at most `k` apart are
/// adjacent. The first and last `k` vertices are its ordered ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPath {
    pub k: usize,
    pub vertices: Vec<usize>,
}

impl KPath {
    pub fn new(g: &Graph, k: usize, vertices: Vec<usize>) -> Result<KPath> {
        let p = KPath { k, vertices };
        p.validate(g)?;
        Ok(p)
    }

    pub(crate) fn unchecked(k: usize, vertices: Vec<usize>) -> KPath {
        KPath { k, vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> &[usize] {
        &self.vertices[..self.k.min(self.len())]
    }

    pub fn end(&self) -> &[usize] {
        &self.vertices[self.len().saturating_sub(self.k)..]
    }

    pub fn start_clique(&self) -> OrderedClique {
        OrderedClique::unchecked(self.start().to_vec())
    }

    pub fn end_clique(&self) -> OrderedClique {
        OrderedClique::unchecked(self.end().to_vec())
    }

    pub fn reversed(&self) -> KPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        KPath { k: self.k, vertices }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        validate_sequence(g, self.k, &self.vertices)
    }
}

/// Checks distinctness, range, length `≥ k` and every pair within distance `k`.
pub fn validate_sequence(g: &Graph, k: usize, vs: &[usize]) -> Result<()> {
    if k == 0 {
        return input("k must be at least 1");
    }
    if vs.len() < k {
        return input(format!("a {k}-path needs at least {k} vertices, got {}", vs.len()));
    }
    let mut seen = vec![false; g.n()];
    for &v in vs {
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return input(format!("vertex {v} repeats"));
        }
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len().min(i + k + 1) {
            if !g.has_edge(vs[i], vs[j]) {
                return input(format!(
                    "vertices {} and {} at distance {} are not adjacent",
                    vs[i],
                    vs[j],
                    j - i
                ));
            }
        }
    }
    Ok(())
}
