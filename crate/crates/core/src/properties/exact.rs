//! Exhaustive subset scans in Gray-code order.
//!
//! Consecutive subsets differ in one vertex, so `e(U)` (or the cut size)
//! changes by a single neighbourhood popcount per step. Graphs here have at
//! most 26 vertices, so each adjacency row is one machine word.

use num_bigint::BigInt;

use super::{BipartiteDensityReport, DensenessReport, InseparabilityReport, Mode, RobustReport};
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::ratio::Ratio;

pub const DENSENESS_EXACT_LIMIT: usize = 26;
pub const ROBUST_EXACT_LIMIT: usize = 22;
const BIPARTITE_EXACT_LIMIT: usize = 22;

fn rows(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.row_words(v).first().copied().unwrap_or(0)).collect()
}

fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| (mask >> i) & 1 == 1).collect()
}

/// Lexicographic order of the sorted member lists of two subsets.
#[inline]
pub(crate) fn lex_less(a: u64, b: u64) -> bool {
    if a == b {
        return false;
    }
    let x = (a ^ b).trailing_zeros();
    let above = |m: u64| if x == 63 { 0 } else { m >> (x + 1) };
    if (a >> x) & 1 == 1 {
        above(b) != 0
    } else {
        above(a) == 0
    }
}

fn size_guard(g: &Graph, operation: &'static str, limit: usize) -> Result<()> {
    if g.n() > limit {
        Err(Error::Size {
            operation,
            n: g.n(),
            limit,
        })
    } else {
        Ok(())
    }
}

fn small_pair(r: &Ratio, what: &str) -> Result<(i128, i128)> {
    match r.as_i64_pair() {
        Some((p, q)) if p.unsigned_abs() < (1 << 40) && q < (1 << 40) => Ok((p as i128, q as i128)),
        _ => input(format!("{what} = {r} has too large a numerator or denominator for an exact scan")),
    }
}

fn unit_param(r: &Ratio, what: &str) -> Result<(i128, i128)> {
    if !r.in_unit_interval() {
        return input(format!("{what} = {r} must lie in [0, 1]"));
    }
    small_pair(r, what)
}

/// Visits every subset of `0..n` in reflected Gray-code order, starting from
/// the empty set. The callback receives the toggled vertex, whether it was
/// added, and the subset after the toggle.
#[inline]
fn gray_scan(n: usize, mut step: impl FnMut(usize, bool, u64)) {
    let mut mask = 0u64;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        mask ^= 1 << v;
        step(v, (mask >> v) & 1 == 1, mask);
    }
}

/// Minimal `ρ` such that `e(U) ≥ d|U|²/2 − ρn²` for every `U`, by full scan.
pub fn denseness_exact(g: &Graph, d: &Ratio) -> Result<DensenessReport> {
    size_guard(g, "denseness_exact (use the heuristic mode)", DENSENESS_EXACT_LIMIT)?;
    let (a, b) = unit_param(d, "d")?;
    let n = g.n();
    let rows = rows(g);
    // Scaled deficit 2b·(d|U|²/2 − e(U)) = a|U|² − 2b·e(U).
    let mut best_val: i128 = 0;
    let mut best_mask = 0u64;
    let mut edges: i128 = 0;
    let mut size: i128 = 0;
    gray_scan(n, |v, added, mask| {
        if added {
            edges += (rows[v] & mask).count_ones() as i128;
            size += 1;
        } else {
            edges -= (rows[v] & mask).count_ones() as i128;
            size -= 1;
        }
        let val = a * size * size - 2 * b * edges;
        if val > best_val || (val == best_val && lex_less(mask, best_mask)) {
            best_val = val;
            best_mask = mask;
        }
    });
    let denom = 2 * b * (n as i128) * (n as i128);
    let rho_star = if n == 0 {
        Ratio::zero()
    } else {
        Ratio::from_big(BigInt::from(best_val), BigInt::from(denom))
    };
    Ok(DensenessReport {
        mode: Mode::Exact,
        d: d.clone(),
        rho_star,
        witness: mask_members(best_mask),
    })
}

/// Exact inseparability constant by scanning all bipartitions.
///
/// Only sets containing vertex 0 are scanned; the complement of any other
/// set contains 0, has the same ratio and is lexicographically smaller.
pub fn inseparable_exact(g: &Graph) -> Result<InseparabilityReport> {
    size_guard(g, "inseparable_exact (use the heuristic mode)", DENSENESS_EXACT_LIMIT)?;
    let n = g.n();
    if n < 2 {
        return input("inseparability needs at least two vertices");
    }
    let rows = rows(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let deg: Vec<u128> = rows.iter().map(|r| r.count_ones() as u128).collect();
    let nn = n as u128;
    // X = {0}
    let mut cut: u128 = deg[0];
    let mut size: u128 = 1;
    let mut best = (cut, size * (nn - size), 1u64);
    // Gray code over vertices 1..n, shifted by one.
    let mut mask = 1u64;
    for i in 1u64..(1u64 << (n - 1)) {
        let v = i.trailing_zeros() as usize + 1;
        mask ^= 1 << v;
        let inside = (rows[v] & mask).count_ones() as u128;
        if (mask >> v) & 1 == 1 {
            cut = cut + deg[v] - 2 * inside;
            size += 1;
        } else {
            cut = cut + 2 * inside - deg[v];
            size -= 1;
        }
        if mask == full {
            continue;
        }
        let pairs = size * (nn - size);
        // cut/pairs < best.0/best.1
        let lhs = cut * best.1;
        let rhs = best.0 * pairs;
        if lhs < rhs || (lhs == rhs && lex_less(mask, best.2)) {
            best = (cut, pairs, mask);
        }
    }
    Ok(InseparabilityReport {
        mode: Mode::Exact,
        mu_star: Ratio::from_big(BigInt::from(best.0), BigInt::from(best.1)),
        witness: mask_members(best.2),
    })
}

/// Checks `(ρ, d)`-robust matchability over every subset.
pub fn robustly_matchable_exact(g: &Graph, rho: &Ratio, d: &Ratio) -> Result<RobustReport> {
    size_guard(g, "robustly_matchable_exact", ROBUST_EXACT_LIMIT)?;
    let (dn, dd) = unit_param(d, "d")?;
    if rho.is_negative() {
        return input(format!("rho = {rho} must be non-negative"));
    }
    let (rn, rd) = small_pair(rho, "rho")?;
    let n = g.n();
    let ni = n as i128;
    let rows = rows(g);
    let mut witness: Option<u64> = None;
    let mut consider = |mask: u64, size: i128, edges: i128| {
        // e(U) ≥ d|U|²/2 − ρn², scaled by 2·dd·rd.
        if 2 * dd * rd * edges >= dn * rd * size * size - 2 * rn * dd * ni * ni {
            return;
        }
        let small = 2 * rd * size <= rd * ni + 2 * rn * ni;
        if small {
            // |N(v) ∩ U| ≥ d|U| − ρn, scaled by dd·rd.
            let need = dn * rd * size - rn * dd * ni;
            let good = (0..n)
                .filter(|&v| (mask >> v) & 1 == 0)
                .filter(|&v| rd * dd * ((rows[v] & mask).count_ones() as i128) >= need)
                .count() as i128;
            if good * rd >= rd * size - rn * ni {
                return;
            }
        }
        if witness.is_none_or(|w| lex_less(mask, w)) {
            witness = Some(mask);
        }
    };
    consider(0, 0, 0);
    let mut edges: i128 = 0;
    let mut size: i128 = 0;
    gray_scan(n, |v, added, mask| {
        let c = (rows[v] & mask).count_ones() as i128;
        if added {
            edges += c;
            size += 1;
        } else {
            edges -= c;
            size -= 1;
        }
        consider(mask, size, edges);
    });
    Ok(RobustReport {
        mode: Mode::Exact,
        rho: rho.clone(),
        d: d.clone(),
        matchable: witness.is_none(),
        witness: witness.map(mask_members),
    })
}

/// Minimal `ρ` with `e(X, Y) ≥ d|X||Y| − ρn²` for all pairs `X, Y`.
///
/// For fixed `X` the worst `Y` takes exactly the vertices `y` with
/// `|N(y) ∩ X| < d|X|`, so the scan is over `X` alone.
pub fn bipartite_density_exact(g: &Graph, d: &Ratio) -> Result<BipartiteDensityReport> {
    size_guard(g, "bipartite_density_exact", BIPARTITE_EXACT_LIMIT)?;
    let (dn, dd) = unit_param(d, "d")?;
    let n = g.n();
    let rows = rows(g);
    let mut into_x = vec![0i128; n];
    let mut size: i128 = 0;
    let mut best_val: i128 = 0;
    let mut best_mask = 0u64;
    gray_scan(n, |v, added, mask| {
        let delta = if added { 1 } else { -1 };
        size += delta;
        let mut nb = rows[v];
        while nb != 0 {
            let y = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            into_x[y] += delta;
        }
        let val: i128 = into_x.iter().map(|&c| (dn * size - dd * c).max(0)).sum();
        if val > best_val || (val == best_val && lex_less(mask, best_mask)) {
            best_val = val;
            best_mask = mask;
        }
    });
    let x = mask_members(best_mask);
    let xs = x.len() as i128;
    let y: Vec<usize> = (0..n)
        .filter(|&v| dn * xs - dd * ((rows[v] & best_mask).count_ones() as i128) > 0)
        .collect();
    let e_xy = x
        .iter()
        .map(|&u| y.iter().filter(|&&w| (rows[u] >> w) & 1 == 1).count())
        .sum();
    let rho_star = if n == 0 {
        Ratio::zero()
    } else {
        Ratio::from_big(BigInt::from(best_val), BigInt::from(dd * (n as i128) * (n as i128)))
    };
    Ok(BipartiteDensityReport {
        mode: Mode::Exact,
        d: d.clone(),
        rho_star,
        x,
        y,
        e_xy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn lex_order_of_subsets() {
        // [0,1] < [0,2] < [1] and [0] < [0,1]
        assert!(lex_less(0b011, 0b101));
        assert!(lex_less(0b101, 0b010));
        assert!(lex_less(0b001, 0b011));
        assert!(!lex_less(0b011, 0b001));
        assert!(lex_less(0, 0b1));
    }

    fn brute_rho(g: &Graph, d: &Ratio) -> Ratio {
        let n = g.n();
        let mut best = Ratio::zero();
        for mask in 0u64..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
            let s = members.len() as i64;
            let e = members
                .iter()
                .enumerate()
                .map(|(i, &u)| members[i + 1..].iter().filter(|&&v| g.has_edge(u, v)).count())
                .sum::<usize>() as i64;
            let val = Ratio((&d.0 * Ratio::from_integer(s * s).0) / Ratio::from_integer(2).0
                - Ratio::from_integer(e).0);
            if val > best {
                best = val;
            }
        }
        Ratio(best.0 / Ratio::from_integer((n * n) as i64).0)
    }

    #[test]
    fn complete_graph_density() {
        for n in [3usize, 6, 9] {
            let r = denseness_exact(&Graph::complete(n), &Ratio::one()).unwrap();
            assert_eq!(r.rho_star, Ratio::new(1, 2 * n as i64));
            assert_eq!(r.witness, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn complete_bipartite_density() {
        let g = generators::complete_multipartite(&[4, 4]).unwrap();
        let r = denseness_exact(&g, &Ratio::new(1, 2)).unwrap();
        assert_eq!(r.rho_star, Ratio::new(1, 16));
        assert_eq!(r.witness, vec![0, 1, 2, 3]);
        assert_eq!(r.rho_star, brute_rho(&g, &Ratio::new(1, 2)));
    }

    #[test]
    fn edgeless_density_zero() {
        let r = denseness_exact(&Graph::empty(7), &Ratio::zero()).unwrap();
        assert_eq!(r.rho_star, Ratio::zero());
        assert!(r.witness.is_empty());
    }

    #[test]
    fn density_agrees_with_brute_force() {
        for seed in 0..6 {
            let g = generators::gnp(11, &Ratio::new(1, 2), seed).unwrap();
            for d in [Ratio::new(1, 2), Ratio::new(2, 3), Ratio::one()] {
                assert_eq!(denseness_exact(&g, &d).unwrap().rho_star, brute_rho(&g, &d));
            }
        }
    }

    #[test]
    fn size_limit_enforced() {
        let g = Graph::complete(27);
        assert!(matches!(denseness_exact(&g, &Ratio::one()), Err(Error::Size { .. })));
        assert!(matches!(inseparable_exact(&g), Err(Error::Size { .. })));
        let h = Graph::complete(23);
        assert!(robustly_matchable_exact(&h, &Ratio::new(1, 10), &Ratio::one()).is_err());
    }

    #[test]
    fn complete_graph_inseparability() {
        let r = inseparable_exact(&Graph::complete(7)).unwrap();
        assert_eq!(r.mu_star, Ratio::one());
        assert_eq!(r.witness, vec![0]);
    }

    #[test]
    fn disconnected_graph_inseparability() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let r = inseparable_exact(&g).unwrap();
        assert_eq!(r.mu_star, Ratio::zero());
        assert_eq!(r.witness, vec![0, 1, 2]);
    }

    #[test]
    fn inseparability_brute_force() {
        for seed in 0..5 {
            let g = generators::gnp(10, &Ratio::new(1, 2), seed).unwrap();
            let n = 10;
            let mut best: Option<Ratio> = None;
            for mask in 1u64..(1 << n) - 1 {
                let x: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
                let cut: usize = x
                    .iter()
                    .map(|&u| (0..n).filter(|&v| (mask >> v) & 1 == 0 && g.has_edge(u, v)).count())
                    .sum();
                let r = Ratio::new(cut as i64, (x.len() * (n - x.len())) as i64);
                if best.as_ref().is_none_or(|b| r < *b) {
                    best = Some(r);
                }
            }
            assert_eq!(inseparable_exact(&g).unwrap().mu_star, best.unwrap());
        }
    }

    #[test]
    fn robust_edgeless_fails() {
        let r = robustly_matchable_exact(&Graph::empty(16), &Ratio::new(1, 100), &Ratio::new(1, 2))
            .unwrap();
        assert!(!r.matchable);
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn robust_complete_passes() {
        let n = 10;
        let r = robustly_matchable_exact(&Graph::complete(n), &Ratio::new(1, 20), &Ratio::one())
            .unwrap();
        assert!(r.matchable);
        assert!(r.witness.is_none());
    }

    #[test]
    fn bipartite_density_two_cliques() {
        let g = generators::two_overlapping_cliques(12, &Ratio::new(1, 3)).unwrap();
        let r = bipartite_density_exact(&g, &Ratio::new(1, 2)).unwrap();
        assert_eq!(r.x, vec![0, 1, 2, 3]);
        assert_eq!(r.y, vec![8, 9, 10, 11]);
        assert_eq!(r.e_xy, 0);
        assert_eq!(r.rho_star, Ratio::new(1, 18));
    }
}
