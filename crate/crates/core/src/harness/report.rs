//! CSV files written by the harness.

use std::io::Write;
use std::path::Path;

use serde::Deserialize;

use crate::bench::ProblemId;
use crate::{Error, Result};

use super::{RunRecord, SummaryRow};

pub const SUMMARY_HEADER: &str = "problem,dim,config,mean,std,median,mean_evals,h";
pub const RUNS_HEADER: &str = "problem,dim,config,run,seed,final,best_fitness,evals,stop_reason";

fn write_file(path: &Path, body: &str) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(body.as_bytes()).map_err(|e| Error::io(path, e))
}

/// Summary CSV body; rows must already be sorted.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from(SUMMARY_HEADER);
    s.push('\n');
    for r in rows {
        let h = r.h_vs_reference.map(|h| h.to_string()).unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            r.problem, r.dim, r.config, r.mean_final, r.std_final, r.median_final, r.mean_evals, h
        ));
    }
    s
}

/// Writes the summary table, sorted by (problem, dim, config).
pub fn emit_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::arg("no summary rows to write"));
    }
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| (a.problem, a.dim, &a.config).cmp(&(b.problem, b.dim, &b.config)));
    write_file(path, &summary_csv(&sorted))
}

#[derive(Deserialize)]
struct CsvRow {
    problem: ProblemId,
    dim: usize,
    config: String,
    mean: f64,
    std: f64,
    median: f64,
    mean_evals: f64,
    h: Option<u8>,
}

pub fn parse_summary_csv(text: &str) -> std::result::Result<Vec<SummaryRow>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<&str> = reader.headers().map_err(|e| e.to_string())?.iter().collect();
    if header.join(",") != SUMMARY_HEADER {
        return Err(format!("unexpected header {header:?}"));
    }
    reader
        .deserialize::<CsvRow>()
        .map(|r| {
            r.map(|r| SummaryRow {
                problem: r.problem,
                dim: r.dim,
                config: r.config,
                mean_final: r.mean,
                std_final: r.std,
                median_final: r.median,
                mean_evals: r.mean_evals,
                h_vs_reference: r.h,
            })
            .map_err(|e| e.to_string())
        })
        .collect()
}

pub fn read_summary_csv(path: &Path) -> Result<Vec<SummaryRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_summary_csv(&text).map_err(|message| Error::Parse {
        path: path.to_path_buf(),
        message,
    })
}

pub fn emit_runs_csv(runs: &[RunRecord], path: &Path) -> Result<()> {
    let mut s = String::from(RUNS_HEADER);
    s.push('\n');
    for r in runs {
        s.push_str(&format!(
            "{},{},{},{},{},{:.16e},{:.16e},{},{:?}\n",
            r.problem, r.dim, r.config, r.run_index, r.seed, r.final_value, r.best_fitness, r.evaluations_used, r.stop_reason
        ));
    }
    write_file(path, &s)
}
