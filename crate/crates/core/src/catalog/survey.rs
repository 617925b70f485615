use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::{analyze, load_bundle, CatalogError, OutputFormat, RunConfig};
use crate::clifford::VerdictKind;

/// One condensed row: every code of a group sharing these columns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SurveyRow {
    pub group_order: usize,
    pub group_name: String,
    pub phi_degree: usize,
    pub normal_order: usize,
    pub chi_degree: u64,
    #[serde(rename = "dimQ")]
    pub dim_q: u64,
    pub verdict: VerdictKind,
    /// Number of `(N, χ)` pairs merged into this row.
    pub codes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyFailure {
    pub path: String,
    pub error: String,
    pub input_error: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    pub failures: Vec<SurveyFailure>,
}

/// Surveys every `*.json` bundle in `dir`.
pub fn survey(dir: &Path, config: &RunConfig) -> Result<SurveyReport, CatalogError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CatalogError::Io {
        path: dir.display().to_string(),
        source: e,
    })?;
    let mut paths = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CatalogError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
        let path = entry.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            paths.push(path);
        }
    }
    survey_paths(&paths, config)
}

fn rows_for(path: &Path, config: &RunConfig) -> Result<Vec<SurveyRow>, CatalogError> {
    let bundle = load_bundle(path)?;
    let report = analyze(&bundle, config)?;
    let mut rows: Vec<SurveyRow> = Vec::new();
    for r in &report.records {
        let row = SurveyRow {
            group_order: report.group_order,
            group_name: report.name.clone(),
            phi_degree: report.degree,
            normal_order: r.normal_order,
            chi_degree: r.chi_degree,
            dim_q: r.dim_q,
            verdict: r.verdict,
            codes: 1,
        };
        match rows.iter_mut().find(|x| SurveyRow { codes: x.codes, ..row.clone() } == **x) {
            Some(x) => x.codes += 1,
            None => rows.push(row),
        }
    }
    Ok(rows)
}

/// Surveys the given bundles; a failing bundle is reported and skipped.
pub fn survey_paths(paths: &[PathBuf], config: &RunConfig) -> Result<SurveyReport, CatalogError> {
    config.validate()?;
    let mut paths = paths.to_vec();
    paths.sort();
    let run = || -> Vec<(PathBuf, Result<Vec<SurveyRow>, CatalogError>)> {
        paths
            .par_iter()
            .map(|p| (p.clone(), rows_for(p, config)))
            .collect()
    };
    let results = if config.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| CatalogError::Config(e.to_string()))?
            .install(run)
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (path, result) in results {
        match result {
            Ok(r) => rows.extend(r),
            Err(e) => failures.push(SurveyFailure {
                path: path.display().to_string(),
                input_error: e.is_input_error(),
                error: e.to_string(),
            }),
        }
    }
    rows.sort();
    Ok(SurveyReport { rows, failures })
}

impl SurveyReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.rows {
                    w.serialize(row).expect("in-memory write");
                }
                if self.rows.is_empty() {
                    w.write_record([
                        "group_order",
                        "group_name",
                        "phi_degree",
                        "normal_order",
                        "chi_degree",
                        "dimQ",
                        "verdict",
                        "codes",
                    ])
                    .expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            OutputFormat::Text => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "{:>6}  {:<16} {:>6} {:>5} {:>6} {:>5}  {:<13} {:>5}",
                    "|G|", "group", "phi(1)", "|N|", "chi(1)", "dimQ", "verdict", "codes"
                );
                for r in &self.rows {
                    let _ = writeln!(
                        out,
                        "{:>6}  {:<16} {:>6} {:>5} {:>6} {:>5}  {:<13} {:>5}",
                        r.group_order,
                        r.group_name,
                        r.phi_degree,
                        r.normal_order,
                        r.chi_degree,
                        r.dim_q,
                        r.verdict.as_str(),
                        r.codes
                    );
                }
                for f in &self.failures {
                    let _ = writeln!(out, "failed: {}: {}", f.path, f.error);
                }
                out
            }
        }
    }
}
