//! Exact walk counts and the layered reachability sets behind the
//! walk-counting argument for inseparable graphs.
//!
//! A walk with `i` inner vertices has `i + 1` edges; vertices may repeat.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::ratio::{choose2, Ratio};

pub const MAX_WALK_LEVEL: usize = 64;

/// `counts[v][i]` = number of `(source, v)`-walks with `i` inner vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCountTable {
    pub source: usize,
    pub max_level: usize,
    pub counts: Vec<Vec<BigUint>>,
}

impl WalkCountTable {
    pub fn count(&self, v: usize, inner: usize) -> &BigUint {
        &self.counts[v][inner]
    }
}

pub fn count_walks(g: &Graph, x: usize, max_level: usize) -> Result<WalkCountTable> {
    g.check_vertex(x)?;
    if max_level > MAX_WALK_LEVEL {
        return Err(Error::Size {
            operation: "walk counting",
            n: max_level,
            limit: MAX_WALK_LEVEL,
        });
    }
    let n = g.n();
    let mut counts: Vec<Vec<BigUint>> = vec![Vec::with_capacity(max_level + 1); n];
    let mut current: Vec<BigUint> = (0..n)
        .map(|v| if g.has_edge(x, v) { BigUint::one() } else { BigUint::zero() })
        .collect();
    for level in 0..=max_level {
        for (v, c) in current.iter().enumerate() {
            counts[v].push(c.clone());
        }
        if level == max_level {
            break;
        }
        current = (0..n)
            .map(|v| {
                g.row(v)
                    .iter()
                    .fold(BigUint::zero(), |acc, u| acc + &current[u])
            })
            .collect();
    }
    Ok(WalkCountTable {
        source: x,
        max_level,
        counts,
    })
}

/// `L = ⌊8/μ⌋`, `δ_i = (μ²/3)^i (1/2)^{C(i+1,2)}` and `c = μ²/48 · δ_{⌊4/μ⌋}²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSchedule {
    pub mu: Ratio,
    pub levels: usize,
    pub delta: Vec<Ratio>,
    pub c: Ratio,
}

pub fn delta_schedule(mu: &Ratio) -> Result<DeltaSchedule> {
    if mu.is_negative() || mu.is_zero() || !mu.in_unit_interval() {
        return input(format!("mu = {mu} must lie in (0, 1]"));
    }
    let inv = Ratio(mu.0.recip());
    let levels = inv.floor_mul(8);
    let half_levels = inv.floor_mul(4);
    let base = Ratio(mu.pow(2).0 / Ratio::from_integer(3).0);
    let delta: Vec<Ratio> = (0..=levels)
        .map(|i| {
            let i = i as u32;
            Ratio(base.pow(i).0 * Ratio::new(1, 2).pow(choose2(i + 1)).0)
        })
        .collect();
    let c = Ratio(mu.pow(2).0 / Ratio::from_integer(48).0 * delta[half_levels].pow(2).0);
    Ok(DeltaSchedule {
        mu: mu.clone(),
        levels,
        delta,
        c,
    })
}

/// `count ≥ r · n^level`, compared exactly.
fn meets(count: &BigUint, r: &Ratio, n: usize, level: usize) -> bool {
    let lhs = BigInt::from(count.clone()) * r.denom();
    let rhs = r.numer() * num_traits::pow(BigInt::from(n), level);
    lhs >= rhs
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerFamily {
    pub source: usize,
    /// `X_i`: vertices reached by at least `δ_i n^i` walks with `i` inner vertices.
    pub layers: Vec<Vec<usize>>,
    /// `X^i = X_0 ∪ … ∪ X_i`.
    pub cumulative: Vec<Vec<usize>>,
}

pub fn layer_family(g: &Graph, x: usize, schedule: &DeltaSchedule) -> Result<LayerFamily> {
    let table = count_walks(g, x, schedule.levels)?;
    Ok(layers_from_table(g.n(), &table, schedule))
}

pub fn layers_from_table(n: usize, table: &WalkCountTable, schedule: &DeltaSchedule) -> LayerFamily {
    let mut layers = Vec::new();
    let mut cumulative = Vec::new();
    let mut seen = vec![false; n];
    for (i, delta) in schedule.delta.iter().enumerate().take(table.max_level + 1) {
        let layer: Vec<usize> = (0..n)
            .filter(|&v| meets(table.count(v, i), delta, n, i))
            .collect();
        layer.iter().for_each(|&v| seen[v] = true);
        cumulative.push((0..n).filter(|&v| seen[v]).collect());
        layers.push(layer);
    }
    LayerFamily {
        source: table.source,
        layers,
        cumulative,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkLevel {
    pub level: usize,
    pub count: BigUint,
}

/// Smallest `ℓ ≤ L` with at least `c·n^ℓ` `(x, y)`-walks having `ℓ` inner vertices.
pub fn find_walk_level(g: &Graph, x: usize, y: usize, schedule: &DeltaSchedule) -> Result<Option<WalkLevel>> {
    g.check_vertex(y)?;
    if x == y {
        return input("walk endpoints must differ");
    }
    let table = count_walks(g, x, schedule.levels)?;
    Ok((0..=schedule.levels)
        .find(|&l| meets(table.count(y, l), &schedule.c, g.n(), l))
        .map(|level| WalkLevel {
            level,
            count: table.count(y, level).clone(),
        }))
}

/// Raw `(x, y)`-walk counts for `0..=max_level` inner vertices.
pub fn walk_profile(g: &Graph, x: usize, y: usize, max_level: usize) -> Result<Vec<BigUint>> {
    g.check_vertex(y)?;
    let table = count_walks(g, x, max_level)?;
    Ok(table.counts[y].clone())
}

/// Smallest number of inner vertices over which some `(x, y)`-walk exists.
pub fn first_positive_level(g: &Graph, x: usize, y: usize, max_level: usize) -> Result<Option<usize>> {
    Ok(walk_profile(g, x, y, max_level)?.iter().position(|c| !c.is_zero()))
}
