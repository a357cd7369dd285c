use std::fs::File;
use std::io::{self, BufWriter, Read, Write};

use anyhow::Context;
use serde::Serialize;

use powerham::{Graph, VertexSet};

pub fn read_text(path: &str) -> anyhow::Result<String> {
    let mut s = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
    } else {
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut s))
            .with_context(|| format!("reading {path}"))?;
    }
    Ok(s)
}

pub fn read_graph(path: &str) -> anyhow::Result<Graph> {
    let text = read_text(path)?;
    // Accept the JSON output of `generate --json` as well.
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&text).context("graph JSON")?;
        let inner = v["graph"].as_str().context("JSON input has no \"graph\" field")?;
        return Ok(Graph::from_text(inner)?);
    }
    Graph::from_text(&text).with_context(|| format!("parsing graph from {path}"))
}

pub fn read_sets(path: &str, n: usize) -> anyhow::Result<Vec<VertexSet>> {
    let lists: Vec<Vec<usize>> = serde_json::from_str(&read_text(path)?).context("hitting sets must be a JSON list of vertex lists")?;
    lists
        .iter()
        .map(|l| VertexSet::from_members(n, l).map_err(Into::into))
        .collect()
}

/// Stdout or a file, buffered.
pub struct Output(Box<dyn Write>);

impl Output {
    pub fn open(path: &str) -> anyhow::Result<Output> {
        let w: Box<dyn Write> = if path == "-" {
            Box::new(BufWriter::new(io::stdout()))
        } else {
            Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {path}"))?))
        };
        Ok(Output(w))
    }

    pub fn writer(&mut self) -> &mut dyn Write {
        &mut self.0
    }

    pub fn text(&mut self, s: &str) -> anyhow::Result<()> {
        self.0.write_all(s.as_bytes())?;
        Ok(())
    }

    pub fn line(&mut self, s: &str) -> anyhow::Result<()> {
        writeln!(self.0, "{s}")?;
        Ok(())
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, v: &T) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut self.0, v)?;
        writeln!(self.0)?;
        Ok(())
    }

    pub fn finish(mut self) -> anyhow::Result<()> {
        self.0.flush()?;
        Ok(())
    }
}
