//! `powerham`: generate graphs, check their properties, and search for and
//! verify powers of Hamiltonian cycles.
//!
//! Exit codes: 0 on success, 1 when a certificate is missing or invalid,
//! 2 on usage or input errors.

mod bench;
mod io;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use powerham::constants::{connecting_constants, paper_constants};
use powerham::generators::GenSpec;
use powerham::hamiltonian::{
    brute_force_oracle, find_hamiltonian_power, find_with_hitting_sets, verify, Certificate, ConstantsMode,
    PipelineConfig, PipelineOutcome, DEFAULT_SEED,
};
use powerham::properties::{
    denseness_exact, denseness_heuristic, inseparable_exact, inseparable_heuristic, robustly_matchable_exact,
    DENSENESS_EXACT_LIMIT, ROBUST_EXACT_LIMIT,
};
use powerham::{Graph, Ratio};

use io::Output;

#[derive(Parser, Debug)]
#[command(name = "powerham", version, about = "Powers of Hamiltonian cycles in dense graphs")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Output path, '-' for stdout.
    #[arg(short, long, global = true, default_value = "-")]
    output: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated graph in the edge-list text format.
    Generate(GenerateArgs),
    /// Evaluate denseness, inseparability or robust matchability.
    Check(CheckArgs),
    /// Run the absorption pipeline.
    Find(FindArgs),
    /// Check a certificate against a graph.
    Verify(VerifyArgs),
    /// Exhaustive search on small graphs.
    Oracle(OracleArgs),
    /// Evaluate the proof's constants exactly.
    Constants(ConstantsArgs),
    /// Run the pipeline over a seeded gnp sweep and write a CSV.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Family {
    TwoCliques,
    Multipartite,
    Gnp,
    RandomBipartite,
    CliqueComplement,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    mu: Option<Ratio>,
    #[arg(long)]
    p: Option<Ratio>,
    /// Part sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    parts: Vec<usize>,
    #[arg(long, env = "POWERHAM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("property").required(true).multiple(true).args(["dense", "insep", "robust"])))]
struct CheckArgs {
    /// Graph file, '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Smallest ρ for which the graph is (ρ, D)-dense.
    #[arg(long, value_name = "D")]
    dense: Option<Ratio>,
    /// Inseparability constant.
    #[arg(long)]
    insep: bool,
    /// Robust matchability at the given ρ and d.
    #[arg(long, value_name = "RHO,D")]
    robust: Option<String>,
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    #[arg(long)]
    heuristic: bool,
    /// Iterations for heuristic search.
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    #[arg(long, env = "POWERHAM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct FindArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(short)]
    k: usize,
    #[arg(long)]
    zeta: Option<Ratio>,
    #[arg(long)]
    reservoir: Option<Ratio>,
    #[arg(long)]
    stop: Option<Ratio>,
    #[arg(long)]
    retries: Option<usize>,
    #[arg(long, env = "POWERHAM_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// JSON list of vertex lists; each must host a window of the cycle.
    #[arg(long, value_name = "FILE")]
    hitting_sets: Option<String>,
    /// Refuse unless the proof's constants admit this n.
    #[arg(long)]
    paper_constants: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(default_value = "-")]
    input: String,
    /// Overrides the power stored in the certificate.
    #[arg(short)]
    k: Option<usize>,
    /// Certificate JSON, or the JSON output of `find`.
    #[arg(long, value_name = "FILE")]
    certificate: String,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(default_value = "-")]
    input: String,
    #[arg(short)]
    k: usize,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long)]
    mu: Ratio,
    #[arg(long)]
    d: Ratio,
    #[arg(short)]
    k: usize,
    /// Evaluates the connecting constants at this ζ as well.
    #[arg(long)]
    zeta: Option<Ratio>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let infeasible = matches!(e.downcast_ref::<powerham::Error>(), Some(powerham::Error::InfeasibleSet { .. }));
            ExitCode::from(if infeasible { 1 } else { 2 })
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let mut out = Output::open(&cli.output)?;
    let code = match &cli.command {
        Command::Generate(a) => generate(a, cli.json, &mut out)?,
        Command::Check(a) => check(a, cli.json, &mut out)?,
        Command::Find(a) => find(a, cli.json, &mut out)?,
        Command::Verify(a) => verify_cmd(a, cli.json, &mut out)?,
        Command::Oracle(a) => oracle(a, cli.json, &mut out)?,
        Command::Constants(a) => constants(a, cli.json, &mut out)?,
        Command::Bench(a) => bench::run(a, &mut out)?,
    };
    out.finish()?;
    Ok(code)
}

fn need<T: Clone>(v: &Option<T>, flag: &str, family: Family) -> anyhow::Result<T> {
    match v {
        Some(x) => Ok(x.clone()),
        None => bail!("--{flag} is required for --family {family:?}"),
    }
}

fn generate(a: &GenerateArgs, json: bool, out: &mut Output) -> anyhow::Result<u8> {
    let f = a.family;
    let spec = match f {
        Family::TwoCliques => GenSpec::TwoCliques { n: need(&a.n, "n", f)?, mu: need(&a.mu, "mu", f)? },
        Family::Multipartite => {
            if a.parts.is_empty() {
                bail!("--parts is required for --family multipartite");
            }
            GenSpec::Multipartite { parts: a.parts.clone() }
        }
        Family::Gnp => GenSpec::Gnp { n: need(&a.n, "n", f)?, p: need(&a.p, "p", f)?, seed: a.seed },
        Family::RandomBipartite => GenSpec::RandomBipartite { n: need(&a.n, "n", f)?, p: need(&a.p, "p", f)?, seed: a.seed },
        Family::CliqueComplement => GenSpec::CliqueComplement { n: need(&a.n, "n", f)?, mu: need(&a.mu, "mu", f)? },
    };
    let g = spec.build()?;
    if json {
        out.json(&json!({ "spec": spec, "n": g.n(), "m": g.edge_count(), "graph": g.to_text() }))?;
    } else {
        out.line(&format!("# {}", serde_json::to_string(&spec)?))?;
        out.text(&g.to_text())?;
    }
    Ok(0)
}

fn check(a: &CheckArgs, json: bool, out: &mut Output) -> anyhow::Result<u8> {
    let g = io::read_graph(&a.input)?;
    let exact_for = |limit: usize| if a.exact { true } else if a.heuristic { false } else { g.n() <= limit };
    let mut report = serde_json::Map::new();
    let mut lines = Vec::new();
    let mut code = 0;
    if let Some(d) = &a.dense {
        let r = if exact_for(DENSENESS_EXACT_LIMIT) {
            denseness_exact(&g, d)?
        } else {
            denseness_heuristic(&g, d, a.budget, a.seed)?
        };
        lines.push(format!("dense   d = {d}  rho* = {}  ({:?}, witness {:?})", r.rho_star, r.mode, r.witness));
        report.insert("dense".into(), serde_json::to_value(&r)?);
    }
    if a.insep {
        let r = if exact_for(DENSENESS_EXACT_LIMIT) {
            inseparable_exact(&g)?
        } else {
            inseparable_heuristic(&g, a.budget, a.seed)?
        };
        lines.push(format!("insep   mu* = {}  ({:?}, witness {:?})", r.mu_star, r.mode, r.witness));
        report.insert("insep".into(), serde_json::to_value(&r)?);
    }
    if let Some(spec) = &a.robust {
        let Some((rho, d)) = spec.split_once(',') else { bail!("--robust expects RHO,D") };
        let rho: Ratio = rho.trim().parse().context("--robust RHO")?;
        let d: Ratio = d.trim().parse().context("--robust D")?;
        if a.heuristic {
            bail!("robust matchability has no heuristic mode");
        }
        if g.n() > ROBUST_EXACT_LIMIT {
            bail!("robust matchability is exact only, up to n = {ROBUST_EXACT_LIMIT}");
        }
        let r = robustly_matchable_exact(&g, &rho, &d)?;
        lines.push(format!("robust  rho = {rho}, d = {d}  matchable = {}  witness {:?}", r.matchable, r.witness));
        if !r.matchable {
            code = 1;
        }
        report.insert("robust".into(), serde_json::to_value(&r)?);
    }
    if json {
        out.json(&Value::Object(report))?;
    } else {
        for l in lines {
            out.line(&l)?;
        }
    }
    Ok(code)
}

fn find(a: &FindArgs, json: bool, out: &mut Output) -> anyhow::Result<u8> {
    let g = io::read_graph(&a.input)?;
    let mut cfg = PipelineConfig::new(a.k);
    cfg.seed = a.seed;
    if let Some(z) = &a.zeta {
        cfg.zeta = z.clone();
    }
    if let Some(r) = &a.reservoir {
        cfg.reservoir_fraction = r.clone();
    }
    cfg.stop_fraction = a.stop.clone();
    if let Some(r) = a.retries {
        cfg.retries = r;
    }
    if a.paper_constants {
        cfg.mode = ConstantsMode::PaperConstants;
    }
    let (outcome, tallies) = match &a.hitting_sets {
        Some(path) => {
            let sets = io::read_sets(path, g.n())?;
            let h = find_with_hitting_sets(&g, &cfg, &sets, 1)?;
            (h.outcome, Some(h.tallies))
        }
        None => (find_hamiltonian_power(&g, &cfg)?, None),
    };
    let PipelineOutcome { certificate, report } = &outcome;
    if json {
        let mut v = json!({ "certificate": certificate, "report": report });
        if let Some(t) = &tallies {
            v["tallies"] = json!(t);
        }
        out.json(&v)?;
    } else {
        match certificate {
            Some(c) => out.line(&format!("found k = {} ordering {:?}", c.k, c.ordering))?,
            None => out.line(&format!(
                "no certificate: stage {} failed ({})",
                report.failed_stage.unwrap_or("?"),
                report.failure.as_deref().unwrap_or("")
            ))?,
        }
        out.line(&format!("attempts {}  max_inner {}", report.attempts, report.max_inner))?;
        let s = report;
        out.line(&format!(
            "absorbing_path  members {}  dropped {}  vertices {}",
            s.absorbing_path.members, s.absorbing_path.dropped, s.absorbing_path.vertices
        ))?;
        out.line(&format!("reservoir       size {}", s.reservoir.size))?;
        out.line(&format!("cover           paths {}  covered {}  leftover {}", s.cover.paths, s.cover.covered, s.cover.leftover))?;
        out.line(&format!(
            "connect         connections {}  inner {}  reservoir used {}",
            s.connect.connections, s.connect.inner_vertices, s.connect.reservoir_used
        ))?;
        out.line(&format!(
            "absorb          absorbed {}  by segments {}  by insertion {}",
            s.absorb.absorbed, s.absorb.via_segments, s.absorb.via_insertion
        ))?;
        if let Some(t) = &tallies {
            out.line(&format!("windows per set {t:?}"))?;
        }
    }
    Ok(if certificate.is_some() { 0 } else { 1 })
}

fn verify_cmd(a: &VerifyArgs, json: bool, out: &mut Output) -> anyhow::Result<u8> {
    let g = io::read_graph(&a.input)?;
    let text = io::read_text(&a.certificate)?;
    let value: Value = serde_json::from_str(&text).context("certificate is not JSON")?;
    let value = match value.get("certificate") {
        Some(inner) => inner.clone(),
        None => value,
    };
    if value.is_null() {
        bail!("the input holds no certificate");
    }
    let mut cert: Certificate = serde_json::from_value(value).context("malformed certificate")?;
    if let Some(k) = a.k {
        cert.k = k;
    }
    let verdict = verify(&g, &cert)?;
    if json {
        out.json(&verdict)?;
    } else if verdict.valid {
        out.line(&format!("valid: ordering is a Hamiltonian cycle whose power k = {} lies in the graph", cert.k))?;
    } else {
        let (u, v) = verdict.violation.expect("invalid verdicts name a pair");
        out.line(&format!("invalid: {u} and {v} are close on the cycle but not adjacent"))?;
    }
    Ok(if verdict.valid { 0 } else { 1 })
}

fn oracle(a: &OracleArgs, json: bool, out: &mut Output) -> anyhow::Result<u8> {
    let g: Graph = io::read_graph(&a.input)?;
    let found = brute_force_oracle(&g, a.k)?;
    match (&found, json) {
        (_, true) => out.json(&json!({ "certificate": found }))?,
        (Some(c), false) => out.line(&format!("ordering {:?}", c.ordering))?,
        (None, false) => out.line("none")?,
    }
    Ok(if found.is_some() { 0 } else { 1 })
}

fn constants(a: &ConstantsArgs, json: bool, out: &mut Output) -> anyhow::Result<u8> {
    let pc = paper_constants(&a.d, &a.mu, a.k)?;
    let at_zeta = match &a.zeta {
        Some(z) => Some(connecting_constants(&a.d, &a.mu, z, a.k)?),
        None => None,
    };
    if json {
        let mut v = serde_json::to_value(&pc)?;
        if let Some(c) = &at_zeta {
            v["connecting_at_zeta"] = serde_json::to_value(c)?;
        }
        out.json(&v)?;
        return Ok(0);
    }
    let c = at_zeta.as_ref().unwrap_or(&pc.absorbing.connecting);
    let rows: Vec<(&str, String)> = vec![
        ("path rho", pc.path.rho.to_string()),
        ("path zeta", pc.path.zeta.to_string()),
        ("walk levels L", c.levels.to_string()),
        ("walk constant c", c.c.to_string()),
        ("xi_0", c.xi0.to_string()),
        ("xi", c.xi.to_string()),
        ("connecting rho", c.rho.to_string()),
        ("connecting M", c.max_inner.to_string()),
        ("absorber zeta", pc.absorbing.zeta.to_string()),
        ("absorbing alpha", pc.absorbing.alpha.to_string()),
        ("absorbing M", pc.absorbing.max_inner.to_string()),
        ("absorbing rho", pc.absorbing.rho.to_string()),
        ("zeta_C", pc.zeta_c.to_string()),
        ("main rho", pc.rho.to_string()),
        ("reservoir p", pc.reservoir_probability.to_string()),
        ("log2 of minimum n", format!("{:.6e}", pc.log2_min_n)),
    ];
    if a.zeta.is_some() {
        out.line("(walk and connecting rows at the given zeta)")?;
    }
    for (name, value) in rows {
        out.line(&format!("{name:<20} {value}"))?;
    }
    Ok(0)
}
