//! Randomised and spectral bounds for graphs too large for exhaustive scans.

use num_bigint::BigInt;

use super::{DensenessReport, InseparabilityReport, Mode};
use crate::bitset::VertexSet;
use crate::error::{input, Result};
use crate::graph::Graph;
use crate::ratio::Ratio;
use crate::rng::SplitMix64;

const POWER_ITERATIONS: usize = 200;
const RAYLEIGH_TOLERANCE: f64 = 1e-9;

/// Lower bound on the minimal denseness `ρ` via local search over subsets.
///
/// Steepest-ascent single-vertex flips on the deficit `d|U|²/2 − e(U)`,
/// restarted from random subsets until `budget` flips are spent. The
/// reported value is the exact deficit of the best subset found.
pub fn denseness_heuristic(g: &Graph, d: &Ratio, budget: usize, seed: u64) -> Result<DensenessReport> {
    if !d.in_unit_interval() {
        return input(format!("d = {d} must lie in [0, 1]"));
    }
    let n = g.n();
    let df = d.to_f64();
    let mut rng = SplitMix64::stream(seed, 0xD3);
    let mut best: (f64, Vec<usize>) = (0.0, Vec::new());
    let mut spent = 0usize;
    let mut restart = 0usize;
    while spent < budget.max(1) {
        // Structured first starts, random afterwards.
        let mut inside = vec![false; n];
        match restart {
            0 => {}
            1 => inside.iter_mut().for_each(|b| *b = true),
            _ => inside.iter_mut().for_each(|b| *b = rng.next_u64() & 1 == 1),
        }
        restart += 1;
        let mut into_u: Vec<i64> = (0..n)
            .map(|v| g.row(v).iter().filter(|&u| inside[u]).count() as i64)
            .collect();
        let mut size = inside.iter().filter(|&&b| b).count() as i64;
        let mut edges: i64 = (0..n).filter(|&v| inside[v]).map(|v| into_u[v]).sum::<i64>() / 2;
        loop {
            let value = df * (size * size) as f64 / 2.0 - edges as f64;
            if value > best.0 + 1e-12 {
                best = (value, (0..n).filter(|&v| inside[v]).collect());
            }
            if spent >= budget.max(1) {
                break;
            }
            let mut pick: Option<(f64, usize)> = None;
            for v in 0..n {
                let gain = if inside[v] {
                    df * (1 - 2 * size) as f64 / 2.0 + into_u[v] as f64
                } else {
                    df * (2 * size + 1) as f64 / 2.0 - into_u[v] as f64
                };
                if gain > 1e-12 && pick.is_none_or(|(g0, _)| gain > g0) {
                    pick = Some((gain, v));
                }
            }
            let Some((_, v)) = pick else { break };
            spent += 1;
            let delta: i64 = if inside[v] { -1 } else { 1 };
            edges += delta * into_u[v];
            size += delta;
            inside[v] = !inside[v];
            for u in g.row(v).iter() {
                into_u[u] += delta;
            }
        }
        spent += 1;
    }
    let rho_star = exact_deficit(g, d, &best.1);
    Ok(DensenessReport {
        mode: Mode::Heuristic,
        d: d.clone(),
        rho_star,
        witness: best.1,
    })
}

fn exact_deficit(g: &Graph, d: &Ratio, members: &[usize]) -> Ratio {
    let n = g.n();
    if n == 0 || members.is_empty() {
        return Ratio::zero();
    }
    let set = VertexSet::collect(n, members.iter().copied());
    let e = g.edges_within(&set).expect("same universe") as i64;
    let s = members.len() as i64;
    let deficit = &d.0 * Ratio::new(s * s, 2).0 - Ratio::from_integer(e).0;
    let r = deficit / Ratio::from_integer((n * n) as i64).0;
    if r.numer() < &BigInt::from(0) {
        Ratio::zero()
    } else {
        Ratio(r)
    }
}

struct Cut {
    edges: u64,
    size: u64,
    members: Vec<usize>,
}

impl Cut {
    fn less_than(&self, edges: u64, size: u64, n: u64) -> bool {
        // edges / (size(n−size)) < self.edges / (self.size(n−self.size))
        let lhs = (edges as u128) * (self.size * (n - self.size)) as u128;
        lhs < (self.edges as u128) * (size * (n - size)) as u128
    }
}

fn sweep(g: &Graph, order: &[usize], best: &mut Cut) {
    let n = g.n();
    let mut inside = vec![false; n];
    let mut edges: i64 = 0;
    for (i, &v) in order.iter().enumerate().take(n - 1) {
        let into = g.row(v).iter().filter(|&u| inside[u]).count() as i64;
        edges += g.degree(v) as i64 - 2 * into;
        inside[v] = true;
        let size = (i + 1) as u64;
        if best.less_than(edges as u64, size, n as u64) {
            let mut members = order[..=i].to_vec();
            members.sort_unstable();
            *best = Cut {
                edges: edges as u64,
                size,
                members,
            };
        }
    }
}

/// Approximate Fiedler vector of the Laplacian by power iteration on
/// `cI − L` with the constant vector projected out.
fn fiedler_vector(g: &Graph, rng: &mut SplitMix64) -> Vec<f64> {
    let n = g.n();
    let c = 2.0 * (0..n).map(|v| g.degree(v)).max().unwrap_or(0) as f64 + 1.0;
    let mut x: Vec<f64> = (0..n).map(|_| rng.unit_f64() - 0.5).collect();
    let mut last_rq = f64::NAN;
    for _ in 0..POWER_ITERATIONS {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|v| *v -= mean);
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        let y: Vec<f64> = (0..n)
            .map(|v| {
                let lx = g.degree(v) as f64 * x[v] - g.row(v).iter().map(|u| x[u]).sum::<f64>();
                c * x[v] - lx
            })
            .collect();
        let rq: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        x = y;
        if (rq - last_rq).abs() < RAYLEIGH_TOLERANCE {
            break;
        }
        last_rq = rq;
    }
    x
}

/// Upper bound on the inseparability constant: the best cut found by a
/// degree-ordered sweep, a spectral sweep, and local search.
pub fn inseparable_heuristic(g: &Graph, budget: usize, seed: u64) -> Result<InseparabilityReport> {
    let n = g.n();
    if n < 2 {
        return input("inseparability needs at least two vertices");
    }
    let mut rng = SplitMix64::stream(seed, 0x15E9);
    let mut best = Cut {
        edges: g.degree(0) as u64,
        size: 1,
        members: vec![0],
    };

    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    sweep(g, &by_degree, &mut best);

    let fiedler = fiedler_vector(g, &mut rng);
    let mut by_value: Vec<usize> = (0..n).collect();
    by_value.sort_by(|&a, &b| fiedler[a].total_cmp(&fiedler[b]).then(a.cmp(&b)));
    sweep(g, &by_value, &mut best);

    // Local search: single-vertex moves that lower the ratio.
    let mut spent = 0usize;
    let mut round = 0usize;
    while spent < budget {
        let mut inside = vec![false; n];
        if round == 0 {
            best.members.iter().for_each(|&v| inside[v] = true);
        } else {
            inside.iter_mut().for_each(|b| *b = rng.next_u64() & 1 == 1);
            let s = inside.iter().filter(|&&b| b).count();
            if s == 0 || s == n {
                let v = rng.index(n);
                inside[v] = !inside[v];
            }
        }
        round += 1;
        let mut into_x: Vec<i64> = (0..n)
            .map(|v| g.row(v).iter().filter(|&u| inside[u]).count() as i64)
            .collect();
        let mut size = inside.iter().filter(|&&b| b).count() as i64;
        let mut edges: i64 = (0..n)
            .filter(|&v| inside[v])
            .map(|v| g.degree(v) as i64 - into_x[v])
            .sum();
        loop {
            if best.less_than(edges as u64, size as u64, n as u64) {
                best = Cut {
                    edges: edges as u64,
                    size: size as u64,
                    members: (0..n).filter(|&v| inside[v]).collect(),
                };
            }
            if spent >= budget {
                break;
            }
            let mut pick: Option<(f64, usize, i64, i64)> = None;
            let current = edges as f64 / (size * (n as i64 - size)) as f64;
            for v in 0..n {
                let (ne, ns) = if inside[v] {
                    (edges - (g.degree(v) as i64 - into_x[v]) + into_x[v], size - 1)
                } else {
                    (edges - into_x[v] + (g.degree(v) as i64 - into_x[v]), size + 1)
                };
                if ns == 0 || ns == n as i64 {
                    continue;
                }
                let r = ne as f64 / (ns * (n as i64 - ns)) as f64;
                if r < current - 1e-12 && pick.is_none_or(|(r0, ..)| r < r0) {
                    pick = Some((r, v, ne, ns));
                }
            }
            let Some((_, v, ne, ns)) = pick else { break };
            spent += 1;
            let delta = if inside[v] { -1 } else { 1 };
            inside[v] = !inside[v];
            edges = ne;
            size = ns;
            for u in g.row(v).iter() {
                into_x[u] += delta;
            }
        }
        spent += 1;
    }

    let members = if best.members.contains(&0) {
        best.members
    } else {
        let set = VertexSet::collect(n, best.members.iter().copied());
        set.complement().to_vec()
    };
    Ok(InseparabilityReport {
        mode: Mode::Heuristic,
        mu_star: Ratio::from_big(
            BigInt::from(best.edges),
            BigInt::from(best.size * (n as u64 - best.size)),
        ),
        witness: members,
    })
}
