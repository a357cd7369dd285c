use std::time::Instant;

use anyhow::{bail, Context};
use clap::Args;

use powerham::generators::gnp;
use powerham::hamiltonian::{find_hamiltonian_power, PipelineConfig, DEFAULT_SEED, STAGES};
use powerham::Ratio;

use crate::io::Output;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// `key=values` pairs separated by ';', e.g. `n=40,60;p=3/4;k=1,2;seeds=5`.
    /// Seeds are a count or a range `a..b`.
    #[arg(long, default_value = "n=40,60,80,100;p=3/4;k=1,2,3;seeds=5")]
    sweep: String,
    /// CSV destination; defaults to --output.
    #[arg(long, value_name = "CSV")]
    out: Option<String>,
    /// Base seed mixed into every run.
    #[arg(long, env = "POWERHAM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug, PartialEq)]
struct Sweep {
    n: Vec<usize>,
    p: Vec<Ratio>,
    k: Vec<usize>,
    seeds: std::ops::Range<u64>,
}

fn list<T: std::str::FromStr>(key: &str, values: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    values
        .split(',')
        .map(|v| v.trim().parse::<T>().map_err(|e| anyhow::anyhow!("{key}: bad value {v:?}: {e}")))
        .collect()
}

fn parse_sweep(spec: &str) -> anyhow::Result<Sweep> {
    let mut sweep = Sweep {
        n: vec![40],
        p: vec![Ratio::new(3, 4)],
        k: vec![2],
        seeds: 0..5,
    };
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((key, values)) = part.split_once('=') else { bail!("sweep entry {part:?} is not key=values") };
        match key.trim() {
            "n" => sweep.n = list("n", values)?,
            "p" => sweep.p = list("p", values)?,
            "k" => sweep.k = list("k", values)?,
            "seeds" => {
                sweep.seeds = match values.split_once("..") {
                    Some((a, b)) => a.trim().parse()?..b.trim().parse()?,
                    None => 0..values.trim().parse().context("seeds")?,
                }
            }
            other => bail!("unknown sweep key {other:?}"),
        }
    }
    Ok(sweep)
}

pub fn run(a: &BenchArgs, out: &mut Output) -> anyhow::Result<u8> {
    let sweep = parse_sweep(&a.sweep)?;
    let mut file = match &a.out {
        Some(path) if path != "-" => Some(Output::open(path)?),
        _ => None,
    };
    let sink = file.as_mut().unwrap_or(out);
    let mut w = csv::Writer::from_writer(sink.writer());
    let mut header = vec!["n", "p", "k", "seed", "success", "failed_stage", "attempts"];
    let stage_cols: Vec<String> = STAGES.iter().map(|s| format!("{s}_ms")).collect();
    header.extend(stage_cols.iter().map(String::as_str));
    header.push("total_ms");
    w.write_record(&header)?;
    for &n in &sweep.n {
        for p in &sweep.p {
            for &k in &sweep.k {
                for seed in sweep.seeds.clone() {
                    let g = gnp(n, p, seed)?;
                    let mut cfg = PipelineConfig::new(k);
                    cfg.seed = a.seed ^ seed;
                    let clock = Instant::now();
                    let outcome = find_hamiltonian_power(&g, &cfg)?;
                    let total = clock.elapsed();
                    let r = &outcome.report;
                    let mut row = vec![
                        n.to_string(),
                        p.to_string(),
                        k.to_string(),
                        seed.to_string(),
                        outcome.certificate.is_some().to_string(),
                        r.failed_stage.unwrap_or("").to_string(),
                        r.attempts.to_string(),
                    ];
                    for stage in STAGES {
                        let ms = r.timings.iter().find(|(s, _)| *s == stage).map(|(_, d)| d.as_secs_f64() * 1e3);
                        row.push(ms.map(|m| format!("{m:.3}")).unwrap_or_default());
                    }
                    row.push(format!("{:.3}", total.as_secs_f64() * 1e3));
                    w.write_record(&row)?;
                }
            }
        }
    }
    w.flush()?;
    drop(w);
    if let Some(f) = file {
        f.finish()?;
    }
    Ok(0)
}
