//! Checkers for uniform density, inseparability, robust matchability and
//! clique connectability.
//!
//! Exact checkers scan every vertex subset in Gray-code order, updating
//! edge counts incrementally, and are limited to small graphs. Heuristic
//! checkers run on any size and return one-sided bounds: a lower bound on
//! the minimal `ρ` for denseness, an upper bound on the inseparability
//! constant `μ`.

mod exact;
mod heuristic;

use serde::Serialize;

use crate::graph::{Graph, OrderedClique};
use crate::ratio::{choose2, Ratio};

pub use exact::{
    bipartite_density_exact, denseness_exact, inseparable_exact, robustly_matchable_exact,
    DENSENESS_EXACT_LIMIT, ROBUST_EXACT_LIMIT,
};
pub use heuristic::{denseness_heuristic, inseparable_heuristic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Heuristic,
}

/// Smallest `ρ ≥ 0` making the graph `(ρ, d)`-dense, with a subset attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensenessReport {
    pub mode: Mode,
    pub d: Ratio,
    pub rho_star: Ratio,
    pub witness: Vec<usize>,
}

/// `min e(X, V∖X) / (|X||V∖X|)` over proper nonempty `X`, with a minimising `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InseparabilityReport {
    pub mode: Mode,
    pub mu_star: Ratio,
    pub witness: Vec<usize>,
}

/// Smallest `ρ` for which `e(X, Y) ≥ d|X||Y| − ρn²` holds for all `X, Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteDensityReport {
    pub mode: Mode,
    pub d: Ratio,
    pub rho_star: Ratio,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub e_xy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RobustReport {
    pub mode: Mode,
    pub rho: Ratio,
    pub d: Ratio,
    pub matchable: bool,
    /// Lexicographically least subset violating both alternatives.
    pub witness: Option<Vec<usize>>,
}

/// The `k`-cliques whose common neighbourhood has at least `⌈ζn⌉` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectableSet {
    pub k: usize,
    pub zeta: Ratio,
    pub threshold: usize,
    pub cliques: Vec<OrderedClique>,
}

pub fn min_degree(g: &Graph) -> crate::Result<usize> {
    g.min_degree()
}

/// `⌈ζn⌉`, the count every "at least ζn" condition is compared against.
pub fn connect_threshold(zeta: &Ratio, n: usize) -> usize {
    zeta.ceil_mul(n)
}

pub fn is_connectable(g: &Graph, clique: &[usize], threshold: usize) -> bool {
    g.common_neighbors_of(clique).len() >= threshold
}

pub fn connectable_cliques(g: &Graph, k: usize, zeta: &Ratio) -> crate::Result<ConnectableSet> {
    if k == 0 {
        return crate::error::input("clique order must be at least 1");
    }
    if zeta.is_negative() || zeta.is_zero() || !zeta.in_unit_interval() {
        return crate::error::input(format!("zeta = {zeta} must lie in (0, 1]"));
    }
    let threshold = connect_threshold(zeta, g.n());
    let cliques = g
        .list_cliques(k, &g.all_vertices())?
        .into_iter()
        .filter(|c| is_connectable(g, c.vertices(), threshold))
        .collect();
    Ok(ConnectableSet {
        k,
        zeta: zeta.clone(),
        threshold,
        cliques,
    })
}

/// Lower bound `(d^{C(k,2)} − (k−1)kρ)·n^k` on ordered `K_k` copies in a
/// `(ρ, d)`-dense graph on `n` vertices.
pub fn ordered_clique_lower_bound(d: &Ratio, rho: &Ratio, k: usize, n: usize) -> Ratio {
    let k32 = k as u32;
    let dk = d.pow(choose2(k32));
    let penalty = Ratio::from_integer(((k as i64) - 1) * k as i64).0 * &rho.0;
    let nk = Ratio::from_integer(n as i64).pow(k32);
    Ratio((dk.0 - penalty) * nk.0)
}
