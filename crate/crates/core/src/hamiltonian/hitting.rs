use serde::Serialize;

use super::certificate::Certificate;
use super::pipeline::{run_with_anchors, PipelineConfig, PipelineOutcome};
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::properties::{connect_threshold, is_connectable};
use crate::rng::SplitMix64;

pub const MAX_SETS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HittingOutcome {
    #[serde(flatten)]
    pub outcome: PipelineOutcome,
    /// Per set, the number of cyclic `k`-windows of the certificate inside it.
    pub tallies: Vec<usize>,
}

/// Cyclic windows of `k` consecutive vertices lying inside each set.
pub fn window_tallies(cert: &Certificate, sets: &[VertexSet]) -> Vec<usize> {
    let ord = &cert.ordering;
    let n = ord.len();
    sets.iter()
        .map(|s| {
            (0..n)
                .filter(|&i| (0..cert.k).all(|j| s.contains(ord[(i + j) % n])))
                .count()
        })
        .collect()
}

/// Runs the pipeline with one connectable `k`-clique from each set threaded
/// into the absorbing path, so each set hosts at least one window of the
/// final cycle.
pub fn find_with_hitting_sets(g: &Graph, cfg: &PipelineConfig, sets: &[VertexSet], per_set_min: usize) -> Result<HittingOutcome> {
    cfg.validate()?;
    if sets.len() > MAX_SETS {
        return Err(Error::Config(format!("at most {MAX_SETS} sets are supported")));
    }
    let n = g.n();
    let threshold = connect_threshold(&cfg.zeta, n);
    let mut rng = SplitMix64::stream(cfg.seed, 0x417);
    let mut taken = VertexSet::empty(n);
    let mut anchors = Vec::new();
    for (index, set) in sets.iter().enumerate() {
        g.check_set(set)?;
        let room = set.difference(&taken);
        let options: Vec<Vec<usize>> = g
            .list_cliques(cfg.k, &room)?
            .into_iter()
            .map(|c| c.into_vec())
            .filter(|c| is_connectable(g, c, threshold))
            .collect();
        let Some(pick) = rng.choose(&options) else {
            return Err(Error::InfeasibleSet { index });
        };
        pick.iter().for_each(|&v| {
            taken.insert(v);
        });
        anchors.push(pick.clone());
    }
    let mut outcome = run_with_anchors(g, cfg, &anchors)?;
    let tallies = match &outcome.certificate {
        Some(c) => window_tallies(c, sets),
        None => vec![0; sets.len()],
    };
    if outcome.certificate.is_some() {
        if let Some(i) = tallies.iter().position(|&t| t < per_set_min) {
            outcome.certificate = None;
            outcome.report.failed_stage = Some("absorbing_path");
            outcome.report.failure = Some(format!("set {i} holds {} windows, wanted {per_set_min}", tallies[i]));
        }
    }
    Ok(HittingOutcome { outcome, tallies })
}
