//! Wave tables (CSV) and run manifests (JSON).

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context};
use givental_core::quad::{Method, WaveSample};
use num_complex::Complex64;
use serde::Serialize;

pub fn header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    h.extend(["re", "im", "err", "method"].map(String::from));
    h
}

pub fn write_table<W: Write>(out: W, n: usize, samples: &[WaveSample]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(n))?;
    for s in samples {
        let mut row: Vec<String> = s.x.iter().map(|v| v.to_string()).collect();
        row.push(s.value.re.to_string());
        row.push(s.value.im.to_string());
        row.push(s.error.to_string());
        row.push(s.method.as_str().to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// One parsed table row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: Vec<f64>,
    pub value: Complex64,
    pub error: f64,
    pub method: Method,
}

pub fn read_table(path: &Path) -> anyhow::Result<Vec<Row>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let head: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let n = head.len().checked_sub(4).filter(|&n| n >= 1).context("table needs x columns and re, im, err, method")?;
    if head != header(n) {
        bail!("unexpected header {head:?}");
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let num = |j: usize| -> anyhow::Result<f64> {
            rec[j].parse().with_context(|| format!("row {}: column {} `{}`", i + 1, head[j], &rec[j]))
        };
        let x = (0..n).map(num).collect::<anyhow::Result<Vec<f64>>>()?;
        let method = Method::parse(&rec[n + 3]).with_context(|| format!("row {}: method `{}`", i + 1, &rec[n + 3]))?;
        rows.push(Row { x, value: Complex64::new(num(n)?, num(n + 1)?), error: num(n + 2)?, method });
    }
    Ok(rows)
}

#[derive(Debug, Serialize)]
pub struct Tolerances {
    pub eps: f64,
    pub rel_tol: f64,
    pub inner_tol: f64,
    pub order: usize,
    pub panel_width: f64,
    pub max_halvings: u32,
}

#[derive(Debug, Serialize)]
pub struct BoxInfo {
    pub reference_point: Vec<f64>,
    pub intervals: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

/// Field order is the serialization order.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub version: String,
    pub n: usize,
    pub lambda: Vec<f64>,
    pub hbar: f64,
    pub method: String,
    pub grid: String,
    pub rows: usize,
    pub tolerances: Tolerances,
    #[serde(rename = "box")]
    pub bx: BoxInfo,
    pub seed: u64,
    pub threads: usize,
    pub warnings: usize,
    pub table: String,
    pub timing: Timing,
}

pub fn write_manifest(path: &Path, m: &Manifest) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(m)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_round_trip() {
        let s = WaveSample {
            x: vec![-0.1, 2.0],
            lambda: vec![0.0, 0.0],
            hbar: 1.0,
            value: Complex64::new(0.1234567890123, -1e-17),
            error: 3e-14,
            method: Method::Recursive,
            warning: false,
            width: 0.5,
        };
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        write_table(std::fs::File::create(&p).unwrap(), 2, std::slice::from_ref(&s)).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("x1,x2,re,im,err,method\n"));
        let rows = read_table(&p).unwrap();
        assert_eq!(rows[0].x, s.x);
        assert_eq!(rows[0].value, s.value);
        assert_eq!(rows[0].method, Method::Recursive);
    }
}
