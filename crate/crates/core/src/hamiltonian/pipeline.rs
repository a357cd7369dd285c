use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::certificate::{extract_factor, verify, Certificate};
use crate::absorber::{
    build_absorbing_path, insert_at_segments, match_to_segments, sample_family, AssemblyOptions,
    FamilyOptions, FamilyStats, DEFAULT_PER_VERTEX_CAP,
};
use crate::bitset::VertexSet;
use crate::connector::{connect, practical_max_inner, ConnectRequest, DEFAULT_NODE_BUDGET};
use crate::constants::paper_constants;
use crate::error::{Error, Result};
use crate::graph::{Graph, OrderedClique};
use crate::pathcover::cover_with_paths;
use crate::properties::inseparable_heuristic;
use crate::ratio::Ratio;
use crate::rng::{Coin, SplitMix64};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const STAGES: [&str; 5] = ["absorbing_path", "reservoir", "cover", "connect", "absorb"];
const MU_ESTIMATE_BUDGET: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantsMode {
    Practical,
    PaperConstants,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub k: usize,
    /// Connectability threshold for cover paths and absorber halves.
    pub zeta: Ratio,
    pub reservoir_fraction: Ratio,
    /// Cover stops once at most this fraction of `n` is uncovered; by default
    /// half the number of absorber segments.
    pub stop_fraction: Option<Ratio>,
    /// Rough share of the vertices spent on the absorbing path.
    pub absorber_fraction: Ratio,
    /// Probability of keeping each sampled absorber.
    pub absorber_rate: Ratio,
    pub retries: usize,
    pub seed: u64,
    pub mode: ConstantsMode,
    /// Inner-vertex cap per connection; derived from the estimated
    /// inseparability when unset.
    pub max_inner: Option<usize>,
    pub node_budget: u64,
    /// Density parameter used when evaluating the proof's constants.
    pub paper_d: Ratio,
}

impl PipelineConfig {
    pub fn new(k: usize) -> PipelineConfig {
        PipelineConfig {
            k,
            zeta: Ratio::new(1, 10),
            reservoir_fraction: Ratio::new(1, 10),
            stop_fraction: None,
            absorber_fraction: Ratio::new(3, 10),
            absorber_rate: Ratio::one(),
            retries: 5,
            seed: DEFAULT_SEED,
            mode: ConstantsMode::Practical,
            max_inner: None,
            node_budget: DEFAULT_NODE_BUDGET,
            paper_d: Ratio::new(1, 2),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let open = |name: &str, r: &Ratio| {
            if r.is_negative() || r.is_zero() || !r.in_unit_interval() || *r == Ratio::one() {
                Err(Error::Config(format!("{name} = {r} must lie in (0, 1)")))
            } else {
                Ok(())
            }
        };
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        open("zeta", &self.zeta)?;
        open("reservoir_fraction", &self.reservoir_fraction)?;
        open("absorber_fraction", &self.absorber_fraction)?;
        if let Some(s) = &self.stop_fraction {
            open("stop_fraction", s)?;
        }
        if self.absorber_rate.is_negative() || self.absorber_rate.is_zero() || !self.absorber_rate.in_unit_interval() {
            return Err(Error::Config(format!("absorber_rate = {} must lie in (0, 1]", self.absorber_rate)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct AbsorbingStage {
    pub ok: bool,
    pub members: usize,
    pub dropped: usize,
    pub anchors: usize,
    pub vertices: usize,
    /// Free segments, i.e. vertices absorbable without the fallback.
    pub capacity: usize,
    pub family: Option<FamilyStats>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReservoirStage {
    pub ok: bool,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverStage {
    pub ok: bool,
    pub stop_size: usize,
    pub paths: usize,
    pub covered: usize,
    pub leftover: usize,
    pub reached_stop: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConnectStage {
    pub ok: bool,
    pub connections: usize,
    pub inner_vertices: usize,
    pub reservoir_used: usize,
    /// Connections that needed uncovered vertices besides the reservoir.
    pub widened: usize,
    pub reversed: usize,
    pub trimmed: usize,
    pub dissolved_paths: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AbsorbStage {
    pub ok: bool,
    pub absorbed: usize,
    pub via_segments: usize,
    pub via_insertion: usize,
    pub factor_cliques: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StageReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub attempts: usize,
    pub max_inner: usize,
    pub absorbing_path: AbsorbingStage,
    pub reservoir: ReservoirStage,
    pub cover: CoverStage,
    pub connect: ConnectStage,
    pub absorb: AbsorbStage,
    pub failed_stage: Option<&'static str>,
    pub failure: Option<String>,
    #[serde(skip)]
    pub timings: Vec<(&'static str, Duration)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineOutcome {
    pub certificate: Option<Certificate>,
    pub report: StageReport,
}

impl PipelineOutcome {
    /// The certificate, or the failing stage as an error.
    pub fn into_result(self) -> Result<Certificate> {
        match self.certificate {
            Some(c) => Ok(c),
            None => Err(Error::Stage {
                stage: self.report.failed_stage.unwrap_or("absorbing_path"),
                reason: self.report.failure.unwrap_or_default(),
            }),
        }
    }
}

type StageFailure = (&'static str, String);

fn fail<T>(stage: &'static str, why: impl Into<String>) -> std::result::Result<T, StageFailure> {
    Err((stage, why.into()))
}

struct Attempt<'a> {
    g: &'a Graph,
    cfg: &'a PipelineConfig,
    seed: u64,
    max_inner: usize,
    anchors: &'a [Vec<usize>],
}

impl Attempt<'_> {
    fn stream(&self, label: u64) -> u64 {
        SplitMix64::stream(self.seed, label).next_u64()
    }

    fn connect(&self, tail: &[usize], head: &[usize], allowed: &VertexSet, label: u64) -> Result<Option<Vec<usize>>> {
        let k = self.cfg.k;
        let mut req = ConnectRequest::new(
            self.g,
            OrderedClique::unchecked(tail.to_vec()),
            OrderedClique::unchecked(head.to_vec()),
            k,
            self.max_inner,
        );
        req.allowed_inner = Some(allowed.clone());
        req.seed = self.stream(label);
        req.node_budget = self.cfg.node_budget;
        Ok(connect(self.g, &req)?.map(|p| p.vertices[k..p.len() - k].to_vec()))
    }

    fn run(&self, report: &mut StageReport) -> std::result::Result<Vec<usize>, StageFailure> {
        let (g, cfg, k, n) = (self.g, self.cfg, self.cfg.k, self.g.n());
        let clock = Instant::now();

        // Absorbing path.
        let mut avoid = VertexSet::empty(n);
        self.anchors.iter().flatten().for_each(|&v| {
            avoid.insert(v);
        });
        let max_members = (cfg.absorber_fraction.floor_mul(n) / (3 * k)).max(1);
        let opts = FamilyOptions {
            per_vertex_cap: DEFAULT_PER_VERTEX_CAP,
            max_members: Some(max_members),
            avoid: Some(avoid),
        };
        let family = sample_family(g, k, &cfg.zeta, &cfg.absorber_rate, self.stream(1), &opts)
            .or_else(|e| fail("absorbing_path", e.to_string()))?;
        report.absorbing_path.family = Some(family.stats.clone());
        if family.members.is_empty() {
            return fail("absorbing_path", "no absorber found");
        }
        let mut assembly = AssemblyOptions::new(self.max_inner);
        assembly.drop_failures = true;
        assembly.node_budget = cfg.node_budget;
        assembly.anchors = self.anchors.to_vec();
        let pa = build_absorbing_path(g, &family, self.stream(2), &assembly)
            .or_else(|e| fail("absorbing_path", e.to_string()))?;
        if pa.segments.is_empty() {
            return fail("absorbing_path", "no absorber could be connected");
        }
        report.absorbing_path = AbsorbingStage {
            ok: true,
            members: pa.segments.len(),
            dropped: pa.dropped.len(),
            anchors: pa.anchors.len(),
            vertices: pa.path.len(),
            capacity: pa.segments.len(),
            family: report.absorbing_path.family.take(),
        };
        report.timings.push(("absorbing_path", clock.elapsed()));

        // Reservoir.
        let clock = Instant::now();
        let on_pa = VertexSet::collect(n, pa.path.vertices.iter().copied());
        let coin = Coin::new(&cfg.reservoir_fraction);
        let mut rng = SplitMix64::new(self.stream(3));
        let mut reservoir = VertexSet::empty(n);
        for v in 0..n {
            if !on_pa.contains(v) && coin.flip(&mut rng) {
                reservoir.insert(v);
            }
        }
        report.reservoir = ReservoirStage { ok: true, size: reservoir.len() };
        report.timings.push(("reservoir", clock.elapsed()));

        // Cover.
        let clock = Instant::now();
        let stop_size = match &cfg.stop_fraction {
            Some(f) => f.floor_mul(n),
            None => pa.segments.len() / 2,
        };
        let mut excluded = on_pa.clone();
        excluded.union_with(&reservoir);
        let cover = cover_with_paths(g, k, &cfg.zeta, &excluded, stop_size, self.stream(4))
            .or_else(|e| fail("cover", e.to_string()))?;
        report.cover = CoverStage {
            ok: true,
            stop_size,
            paths: cover.paths.len(),
            covered: cover.paths.iter().map(|p| p.len()).sum(),
            leftover: cover.leftover.len(),
            reached_stop: cover.reached_stop,
        };
        report.timings.push(("cover", clock.elapsed()));

        // Cyclic connection.
        let clock = Instant::now();
        let mut cycle = pa.path.vertices.clone();
        let floor = cycle.len();
        let mut spare_r = reservoir.clone();
        let mut spare_l = VertexSet::collect(n, cover.leftover.iter().copied());
        let mut stats = ConnectStage::default();
        let mut targets: Vec<Option<Vec<usize>>> = cover.paths.into_iter().map(|p| Some(p.vertices)).collect();
        targets.push(None);
        let trim_budget = 4 * k + 4;
        for (j, target) in targets.into_iter().enumerate() {
            let closing = target.is_none();
            let mut target = target.unwrap_or_else(|| pa.path.start().to_vec());
            let mut trims = 0;
            loop {
                let tail = cycle[cycle.len() - k..].to_vec();
                let widened = spare_r.union(&spare_l);
                let mut tries: Vec<(bool, bool)> = vec![(false, false), (false, true)];
                if !closing {
                    tries.extend([(true, false), (true, true)]);
                }
                let mut found = None;
                for (t, &(reverse, wide)) in tries.iter().enumerate() {
                    let seq: Vec<usize> = if reverse { target.iter().rev().copied().collect() } else { target.clone() };
                    let allowed = if wide { &widened } else { &spare_r };
                    let label = 0x1000 + (j as u64) * 0x100 + (trims as u64) * 8 + t as u64;
                    if let Some(inner) = self.connect(&tail, &seq[..k], allowed, label).or_else(|e| fail("connect", e.to_string()))? {
                        found = Some((inner, seq, reverse, wide));
                        break;
                    }
                }
                if let Some((inner, seq, reverse, wide)) = found {
                    stats.connections += 1;
                    stats.inner_vertices += inner.len();
                    stats.reversed += reverse as usize;
                    stats.widened += wide as usize;
                    for &v in &inner {
                        if spare_r.remove(v) {
                            stats.reservoir_used += 1;
                        }
                        spare_l.remove(v);
                    }
                    cycle.extend_from_slice(&inner);
                    if !closing {
                        cycle.extend_from_slice(&seq);
                    }
                    break;
                }
                if trims == trim_budget {
                    return fail("connect", format!("no connection into path {j} after {trims} trims"));
                }
                trims += 1;
                stats.trimmed += 1;
                // Alternate between shortening the target and the cycle tail.
                if !closing && (trims % 2 == 1 || cycle.len() == floor) {
                    spare_l.insert(target.remove(0));
                    if target.len() < k {
                        target.iter().for_each(|&v| {
                            spare_l.insert(v);
                        });
                        stats.dissolved_paths += 1;
                        break;
                    }
                } else if cycle.len() > floor {
                    let v = cycle.pop().expect("longer than floor");
                    if reservoir.contains(v) {
                        spare_r.insert(v);
                        stats.reservoir_used -= 1;
                    } else {
                        spare_l.insert(v);
                    }
                } else {
                    return fail("connect", "cannot close the cycle");
                }
            }
        }
        stats.ok = true;
        report.connect = stats;
        report.timings.push(("connect", clock.elapsed()));

        // Absorption.
        let clock = Instant::now();
        let outside: Vec<usize> = spare_r.union(&spare_l).to_vec();
        let (pairs, unmatched) = match_to_segments(g, &pa, &outside);
        let starts: Vec<usize> = pa.segments.iter().map(|s| s.start).collect();
        let mut cycle = insert_at_segments(&cycle, k, &starts, &pairs);
        let mut anchor_of = vec![usize::MAX; n];
        for (i, a) in self.anchors.iter().enumerate() {
            a.iter().for_each(|&v| anchor_of[v] = i);
        }
        for &v in &unmatched {
            let len = cycle.len();
            let at = (0..len).find(|&i| {
                let before = cycle[(i + len - 1) % len];
                let inside_anchor = anchor_of[before] != usize::MAX && anchor_of[before] == anchor_of[cycle[i]];
                !inside_anchor
                    && (1..=k).all(|j| g.has_edge(v, cycle[(i + len - j) % len]))
                    && (0..k).all(|j| g.has_edge(v, cycle[(i + j) % len]))
            });
            match at {
                Some(i) => cycle.insert(i, v),
                None => return fail("absorb", format!("vertex {v} fits nowhere in the cycle")),
            }
        }
        report.absorb = AbsorbStage {
            ok: true,
            absorbed: outside.len(),
            via_segments: pairs.len(),
            via_insertion: unmatched.len(),
            factor_cliques: 0,
        };
        report.timings.push(("absorb", clock.elapsed()));
        Ok(cycle)
    }
}

/// Runs the pipeline with reseeded retries. Returns `Err` only for an
/// invalid configuration; stage failures are reported in the outcome.
pub fn find_hamiltonian_power(g: &Graph, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    run_with_anchors(g, cfg, &[])
}

pub(crate) fn run_with_anchors(g: &Graph, cfg: &PipelineConfig, anchors: &[Vec<usize>]) -> Result<PipelineOutcome> {
    cfg.validate()?;
    let n = g.n();
    let mu_hat = if n >= 2 {
        inseparable_heuristic(g, MU_ESTIMATE_BUDGET, cfg.seed)?.mu_star
    } else {
        Ratio::one()
    };
    if cfg.mode == ConstantsMode::PaperConstants {
        let mu = if mu_hat.is_zero() { Ratio::new(1, 100) } else { mu_hat.clone() };
        let pc = paper_constants(&cfg.paper_d, &mu, cfg.k)?;
        if !pc.admits(n) {
            return Err(Error::Config(format!(
                "the proof's constants need n > 2^{:.3e}; run in practical mode",
                pc.log2_min_n
            )));
        }
    }
    let max_inner = cfg.max_inner.unwrap_or_else(|| practical_max_inner(&mu_hat, cfg.k));
    let mut report = StageReport::default();
    for attempt in 0..=cfg.retries {
        let seed = SplitMix64::stream(cfg.seed, 0x100 + attempt as u64).next_u64();
        report = StageReport {
            n,
            k: cfg.k,
            seed: cfg.seed,
            attempts: attempt + 1,
            max_inner,
            ..StageReport::default()
        };
        let run = Attempt {
            g,
            cfg,
            seed,
            max_inner,
            anchors,
        };
        match run.run(&mut report) {
            Ok(cycle) => {
                let cert = Certificate::canonical(cfg.k, &cycle);
                let verdict = verify(g, &cert)?;
                if !verdict.valid {
                    report.failed_stage = Some("absorb");
                    report.failure = Some(format!("assembled cycle fails verification at {:?}", verdict.violation));
                    continue;
                }
                report.absorb.factor_cliques = extract_factor(g, &cert)?.len();
                return Ok(PipelineOutcome {
                    certificate: Some(cert),
                    report,
                });
            }
            Err((stage, why)) => {
                report.failed_stage = Some(stage);
                report.failure = Some(why);
            }
        }
    }
    Ok(PipelineOutcome {
        certificate: None,
        report,
    })
}
