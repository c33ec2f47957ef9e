//! Report rows and their CSV/JSON serialization.
//!
//! Column order of [`BenchRecord`] and [`RuleSummary`] is part of the CSV
//! format; append new columns at the end.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Serialize, Serializer};

/// `None` is written as `-`, the marker for skipped cells.
fn dash<T: Serialize, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => v.serialize(s),
        None => s.serialize_str("-"),
    }
}

/// One (instance, rule) run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub problem: String,
    /// Klee-Minty variant name or random seed.
    pub instance: String,
    pub m: usize,
    pub n: usize,
    pub rule: String,
    pub backend: String,
    /// `optimal`, `unbounded`, `iteration-limit`, `numerical-failure`,
    /// `error` or `skipped`.
    pub status: String,
    #[serde(serialize_with = "dash")]
    pub iterations: Option<usize>,
    #[serde(serialize_with = "dash")]
    pub single_pivots: Option<usize>,
    #[serde(serialize_with = "dash")]
    pub double_pivots: Option<usize>,
    /// Empty under `--no-timestamp`.
    pub wall_time_seconds: Option<f64>,
    #[serde(serialize_with = "dash")]
    pub z: Option<f64>,
}

impl BenchRecord {
    pub fn skipped(problem: String, instance: String, m: usize, n: usize, rule: String, backend: String) -> Self {
        Self {
            problem,
            instance,
            m,
            n,
            rule,
            backend,
            status: "skipped".into(),
            iterations: None,
            single_pivots: None,
            double_pivots: None,
            wall_time_seconds: None,
            z: None,
        }
    }
}

/// Means over the optimal runs of one (m, rule) group.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleSummary {
    pub m: usize,
    pub rule: String,
    pub trials: usize,
    pub optimal: usize,
    pub unbounded: usize,
    pub other: usize,
    pub mean_iterations: Option<f64>,
    pub mean_wall_time_seconds: Option<f64>,
}

pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_csv<T: Serialize>(out: impl Write, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize + ?Sized>(mut out: impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_cells_show_dashes() {
        let r = BenchRecord::skipped("km-v1-m30".into(), "v1".into(), 30, 60, "dantzig".into(), "double".into());
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "problem,instance,m,n,rule,backend,status,iterations,single_pivots,double_pivots,wall_time_seconds,z"
        );
        assert_eq!(lines.next().unwrap(), "km-v1-m30,v1,30,60,dantzig,double,skipped,-,-,-,,-");
    }
}
