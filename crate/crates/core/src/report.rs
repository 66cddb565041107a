//! Versioned CSV tables.
//!
//! Every table starts with a `# schema=N` line followed by a header row. A column named
//! [`TIMING_COLUMN`] holds wall-clock time and is excluded from the stable region, which is
//! what reproducibility checks compare.

use crate::error::{Error, Result};
use crate::matching::MinDegreeEstimate;
use crate::pipeline::PipelineOutcome;

pub const SCHEMA_VERSION: u32 = 1;
pub const TIMING_COLUMN: &str = "seconds";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) -> Result<()> {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        if row.len() != self.headers.len() {
            return Err(Error::arg(format!(
                "row has {} cells, header has {}",
                row.len(),
                self.headers.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for record in std::iter::once(&self.headers).chain(&self.rows) {
            w.write_record(record).expect("writing to memory");
        }
        let body = String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 input");
        format!("# schema={SCHEMA_VERSION}\n{body}")
    }

    /// `key: value` lines for a single row, aligned columns otherwise.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        if self.rows.len() == 1 {
            let width = self.headers.iter().map(|h| h.chars().count()).max().unwrap_or(0);
            for (h, v) in self.headers.iter().zip(&self.rows[0]) {
                out.push_str(&format!("{h:<width$}  {v}\n"));
            }
            return out;
        }
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|j| {
                std::iter::once(&self.headers)
                    .chain(&self.rows)
                    .map(|r| r[j].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for record in std::iter::once(&self.headers).chain(&self.rows) {
            let line: Vec<String> = record
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:<w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// The CSV text with comment lines and the timing column removed.
pub fn stable_region(text: &str) -> Result<String> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(body.as_bytes());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut skip: Option<usize> = None;
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: line + 1,
            msg: e.to_string(),
        })?;
        if line == 0 {
            skip = record.iter().position(|c| c == TIMING_COLUMN);
        }
        let kept = record
            .iter()
            .enumerate()
            .filter(|&(j, _)| Some(j) != skip)
            .map(|(_, c)| c);
        w.write_record(kept).map_err(|e| Error::Parse {
            line: line + 1,
            msg: e.to_string(),
        })?;
    }
    Ok(String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 input"))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// One summary row for a sampler run.
pub fn pipeline_table(out: &PipelineOutcome, seed: u64, count: usize, seconds: f64) -> Table {
    let p = &out.params;
    let d = &out.diagnostics;
    let mut t = Table::new([
        "n",
        "k",
        "ell",
        "m",
        "t",
        "parts",
        "seed",
        "requested",
        "cycles",
        "connecting_tries",
        "eta",
        "samples",
        "partition_tries",
        "partition_failures",
        "extension_attempts",
        "path_failures",
        "connect_failures",
        "dstar_min",
        "dstar_max",
        "predictor_min",
        "collisions",
        "cross_system_collisions",
        "dirac_ratio",
        "status",
        TIMING_COLUMN,
    ]);
    let status = match &out.failure {
        None => "ok".to_string(),
        Some(f) => format!("failed: {f}"),
    };
    t.push([
        p.n.to_string(),
        p.k.to_string(),
        p.ell.to_string(),
        p.m.to_string(),
        p.t.to_string(),
        p.parts.to_string(),
        seed.to_string(),
        count.to_string(),
        out.cycles.len().to_string(),
        d.connecting_tries.to_string(),
        opt(d.eta.map(|e| format!("{e:.6}"))),
        d.samples.to_string(),
        d.partition_tries.to_string(),
        d.partition_failures.to_string(),
        d.extension_attempts.to_string(),
        d.path_failures.to_string(),
        d.connect_failures.to_string(),
        opt(d.dstar_min),
        opt(d.dstar_max),
        opt(d.predictor_min.map(|x| format!("{x:.6}"))),
        d.collisions.to_string(),
        d.cross_system_collisions.to_string(),
        format!("{:.6}", d.dirac_ratio),
        status,
        format!("{seconds:.3}"),
    ])
    .expect("row matches header");
    t
}

/// One row for a min-degree concentration run; the histogram is `degree:count` pairs.
pub fn mindeg_table(est: &MinDegreeEstimate, m: usize, eps: f64, seed: u64, seconds: f64) -> Table {
    let mut t = Table::new([
        "m",
        "eps",
        "seed",
        "trials",
        "successes",
        "probability",
        "delta_star",
        "threshold",
        "vacuous",
        "histogram",
        TIMING_COLUMN,
    ]);
    let hist = est
        .histogram
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c > 0)
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    t.push([
        m.to_string(),
        eps.to_string(),
        seed.to_string(),
        est.trials.to_string(),
        est.successes.to_string(),
        format!("{:.6}", est.probability),
        est.delta_star.to_string(),
        format!("{:.6}", est.threshold),
        est.vacuous.to_string(),
        hist,
        format!("{seconds:.3}"),
    ])
    .expect("row matches header");
    t
}
