use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::graph::Graph;

/// A cyclic vertex ordering claimed to be the `k`-th power of a Hamiltonian cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: usize,
    pub ordering: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    /// First non-adjacent pair at cyclic distance at most `k`, in scan order.
    pub violation: Option<(usize, usize)>,
}

impl Certificate {
    /// Rotates vertex 0 to the front and picks the direction whose second
    /// vertex is smaller.
    pub fn canonical(k: usize, cycle: &[usize]) -> Certificate {
        let n = cycle.len();
        if n == 0 {
            return Certificate { k, ordering: Vec::new() };
        }
        let z = cycle.iter().position(|&v| v == 0).unwrap_or(0);
        let forward: Vec<usize> = (0..n).map(|i| cycle[(z + i) % n]).collect();
        let backward: Vec<usize> = (0..n).map(|i| cycle[(z + n - i) % n]).collect();
        let ordering = if n > 1 && backward[1] < forward[1] { backward } else { forward };
        Certificate { k, ordering }
    }
}

pub fn verify(g: &Graph, cert: &Certificate) -> Result<Verdict> {
    let n = g.n();
    if cert.k == 0 {
        return input("k must be at least 1");
    }
    if cert.ordering.len() != n {
        return input(format!("ordering has {} vertices, graph has {n}", cert.ordering.len()));
    }
    let mut seen = vec![false; n];
    for &v in &cert.ordering {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return input(format!("ordering is not a permutation (vertex {v})"));
        }
    }
    let ord = &cert.ordering;
    for i in 0..n {
        for d in 1..=cert.k.min(n.saturating_sub(1)) {
            let (a, b) = (ord[i], ord[(i + d) % n]);
            if !g.has_edge(a, b) {
                return Ok(Verdict {
                    valid: false,
                    violation: Some((a, b)),
                });
            }
        }
    }
    Ok(Verdict {
        valid: true,
        violation: None,
    })
}

/// `⌊n/(k+1)⌋` disjoint `(k+1)`-cliques: consecutive windows of a valid certificate.
pub fn extract_factor(g: &Graph, cert: &Certificate) -> Result<Vec<Vec<usize>>> {
    let w = cert.k + 1;
    let windows: Vec<Vec<usize>> = cert.ordering.chunks_exact(w).map(<[usize]>::to_vec).collect();
    if let Some(bad) = windows.iter().find(|c| !g.is_clique(c)) {
        return input(format!("window {bad:?} is not a clique"));
    }
    Ok(windows)
}
