use std::collections::HashSet;

use super::certificate::Certificate;
use crate::error::{input, Error, Result};
use crate::graph::Graph;

pub const ORACLE_LIMIT: usize = 14;

struct Oracle<'a> {
    g: &'a Graph,
    k: usize,
    n: usize,
    /// Positions fixed before memoisation starts: the wrap-around window and
    /// the second vertex, which the direction check reads.
    prefix: usize,
    order: Vec<usize>,
    used: u32,
    /// Dead `(used, last k)` states for the current first-`k` prefix.
    dead: HashSet<(u32, u64)>,
}

impl Oracle<'_> {
    fn fits(&self, w: usize) -> bool {
        let p = self.order.len();
        let back = self.order[p.saturating_sub(self.k)..].iter();
        if !back.into_iter().all(|&u| self.g.has_edge(u, w)) {
            return false;
        }
        // Positions that wrap around to the front.
        if p + self.k >= self.n {
            let upto = (p + self.k - self.n).min(p.saturating_sub(1));
            if !self.order[..=upto].iter().all(|&u| u == w || self.g.has_edge(u, w)) {
                return false;
            }
        }
        true
    }

    fn key(&self) -> (u32, u64) {
        let p = self.order.len();
        let tail = self.order[p.saturating_sub(self.k)..]
            .iter()
            .fold(0u64, |acc, &v| (acc << 4) | v as u64);
        (self.used, tail)
    }

    fn search(&mut self) -> bool {
        let p = self.order.len();
        if p == self.n {
            return self.n < 3 || self.order[1] < self.order[self.n - 1];
        }
        let memo = p >= self.prefix;
        if memo && self.dead.contains(&self.key()) {
            return false;
        }
        for w in 0..self.n {
            if self.used & (1 << w) != 0 || !self.fits(w) {
                continue;
            }
            self.order.push(w);
            self.used |= 1 << w;
            if p < self.prefix {
                self.dead.clear();
            }
            if self.search() {
                return true;
            }
            self.used &= !(1 << w);
            self.order.pop();
        }
        if memo {
            let key = self.key();
            self.dead.insert(key);
        }
        false
    }
}

/// Exhaustive search for the `k`-th power of a Hamiltonian cycle, starting at
/// vertex 0 and breaking the direction symmetry. Complete for `n ≤ 14`.
pub fn brute_force_oracle(g: &Graph, k: usize) -> Result<Option<Certificate>> {
    let n = g.n();
    if k == 0 {
        return input("k must be at least 1");
    }
    if n > ORACLE_LIMIT {
        return Err(Error::Size {
            operation: "brute-force oracle",
            n,
            limit: ORACLE_LIMIT,
        });
    }
    if n == 0 {
        return Ok(Some(Certificate { k, ordering: Vec::new() }));
    }
    let mut o = Oracle {
        g,
        k,
        n,
        prefix: k.max(2),
        order: vec![0],
        used: 1,
        dead: HashSet::new(),
    };
    Ok(o.search().then_some(Certificate { k, ordering: o.order }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::hamiltonian::verify;
    use crate::ratio::Ratio;

    #[test]
    fn named_negatives() {
        let k34 = generators::complete_multipartite(&[3, 4]).unwrap();
        assert!(brute_force_oracle(&k34, 1).unwrap().is_none());
        assert!(brute_force_oracle(&Graph::cycle(5), 2).unwrap().is_none());
        let cc = generators::clique_complement(10, &Ratio::new(2, 5)).unwrap();
        assert!(brute_force_oracle(&cc, 1).unwrap().is_none());
        assert!(brute_force_oracle(&Graph::complete(15), 1).is_err());
    }

    #[test]
    fn positives_verify() {
        let c = brute_force_oracle(&Graph::complete(7), 3).unwrap().unwrap();
        assert!(verify(&Graph::complete(7), &c).unwrap().valid);
        let c5 = brute_force_oracle(&Graph::cycle(5), 1).unwrap().unwrap();
        assert_eq!(c5.ordering, vec![0, 1, 2, 3, 4]);
        // The octahedron is the square of a 6-cycle.
        let oct = generators::complete_multipartite(&[2, 2, 2]).unwrap();
        let c = brute_force_oracle(&oct, 2).unwrap().unwrap();
        assert!(verify(&oct, &c).unwrap().valid);
        assert!(brute_force_oracle(&oct, 3).unwrap().is_none());
    }
}
