use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{CatalogError, GroupBundle};
use crate::chartab::DEFAULT_PRIME_BOUND;
use crate::clifford::{Classification, CliffordCode, CliffordContext, VerdictKind};
use crate::cyclotomic::{CycMatrix, Cyclotomic, Term};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::repn::UnitaryRep;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CatalogError::Config(format!("unknown format {other:?}"))),
        }
    }
}

/// Settings shared by `analyze` and `survey`.
///
/// Defaults: text output, one job per core (`jobs = 0`), no filters, no
/// projector emission, prime bound 2^20, groups of order at most 2048.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub format: OutputFormat,
    pub jobs: usize,
    pub min_dim: u64,
    pub only_true_clifford: bool,
    pub emit_projectors: Option<PathBuf>,
    pub prime_bound: u64,
    pub max_group_order: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            format: OutputFormat::Text,
            jobs: 0,
            min_dim: 0,
            only_true_clifford: false,
            emit_projectors: None,
            prime_bound: DEFAULT_PRIME_BOUND,
            max_group_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CatalogError> {
        if self.prime_bound < 3 {
            return Err(CatalogError::Config("prime bound must be at least 3".into()));
        }
        if self.max_group_order == 0 {
            return Err(CatalogError::Config("maximum group order must be positive".into()));
        }
        if let Some(dir) = &self.emit_projectors {
            if dir.exists() && !dir.is_dir() {
                return Err(CatalogError::Config(format!(
                    "{} exists and is not a directory",
                    dir.display()
                )));
            }
        }
        Ok(())
    }

    pub fn accepts(&self, record: &CodeRecord) -> bool {
        record.dim_q >= self.min_dim
            && (!self.only_true_clifford || record.verdict == VerdictKind::TrueClifford)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessRecord {
    pub a_order: usize,
    pub a_generator_words: Vec<String>,
    /// θ on the members of A, keyed by element word.
    pub theta: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvidenceRecord {
    pub a_order: usize,
    pub contains_center: bool,
    pub normal_quotient: String,
    pub group_quotient: String,
    pub target: u64,
    pub stabilizer_dim: String,
}

/// One Clifford code and its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeRecord {
    pub normal_index: usize,
    pub normal_order: usize,
    pub normal_generator_words: Vec<String>,
    pub chi_index: usize,
    pub chi_degree: u64,
    pub chi_values: Vec<String>,
    pub multiplicity: u64,
    #[serde(rename = "dimQ")]
    pub dim_q: u64,
    pub extended_normal_order: usize,
    pub extended_chi_index: usize,
    pub inertia_order: usize,
    pub quasikernel_order: usize,
    pub verdict: VerdictKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<EvidenceRecord>,
    pub undetectable_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisSummary {
    pub codes: usize,
    pub stabilizer: usize,
    pub true_clifford: usize,
    pub reported: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub group_order: usize,
    pub center_order: usize,
    pub degree: usize,
    pub cyclotomic_order: u32,
    pub normal_subgroups: usize,
    pub records: Vec<CodeRecord>,
    pub summary: AnalysisSummary,
}

fn words(group: &FiniteGroup, h: &Subgroup) -> Vec<String> {
    group
        .generating_set(h)
        .into_iter()
        .map(|g| group.word_string(g))
        .collect()
}

fn record(ctx: &CliffordContext, code: &CliffordCode, c: &Classification) -> CodeRecord {
    let g = ctx.group();
    let witness = c.verdict.witness.as_ref().map(|w| WitnessRecord {
        a_order: w.subgroup.order(),
        a_generator_words: words(g, &w.subgroup),
        theta: w
            .subgroup
            .members()
            .iter()
            .zip(&w.theta)
            .map(|(&a, t)| (g.word_string(a), t.to_string()))
            .collect(),
    });
    let evidence = c
        .verdict
        .evidence
        .iter()
        .map(|e| EvidenceRecord {
            a_order: e.a_order,
            contains_center: e.contains_center,
            normal_quotient: e.normal_quotient.to_string(),
            group_quotient: e.group_quotient.to_string(),
            target: e.target,
            stabilizer_dim: e.stabilizer_dim.to_string(),
        })
        .collect();
    CodeRecord {
        normal_index: code.normal_index(),
        normal_order: code.normal().order(),
        normal_generator_words: words(g, code.normal()),
        chi_index: code.chi_index(),
        chi_degree: code.chi_degree(),
        chi_values: code.chi_values().iter().map(Cyclotomic::to_string).collect(),
        multiplicity: code.multiplicity(),
        dim_q: code.dim(),
        extended_normal_order: c.extension.subgroup.order(),
        extended_chi_index: c.extension.chi,
        inertia_order: c.inertia.inertia.order(),
        quasikernel_order: c.inertia.quasikernel.order(),
        verdict: c.verdict.kind,
        witness,
        evidence,
        undetectable_count: c.census.undetectable,
    }
}

/// A projector in bundle-style serialization.
#[derive(Debug, Serialize)]
struct ProjectorFile {
    name: String,
    normal_index: usize,
    chi_index: usize,
    cyclotomic_order: u32,
    degree: usize,
    matrix: Vec<Vec<Vec<Term>>>,
}

fn emit_projector(dir: &Path, bundle: &str, code: &CliffordCode) -> Result<(), CatalogError> {
    let p: &CycMatrix = code.projector();
    let file = ProjectorFile {
        name: format!("{bundle}_N{}_chi{}", code.normal_index(), code.chi_index()),
        normal_index: code.normal_index(),
        chi_index: code.chi_index(),
        cyclotomic_order: p.order(),
        degree: p.rows(),
        matrix: (0..p.rows())
            .map(|i| p.row(i).iter().map(Cyclotomic::to_terms).collect())
            .collect(),
    };
    let path = dir.join(format!("{}.json", file.name));
    let mut text = serde_json::to_string_pretty(&file).expect("projector serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

/// Verifies the bundle, enumerates and classifies every Clifford code.
pub fn analyze(bundle: &GroupBundle, config: &RunConfig) -> Result<AnalysisReport, CatalogError> {
    config.validate()?;
    let group = bundle.group(config.max_group_order)?;
    let rep = UnitaryRep::new(group);
    let cert = rep.verify_error_group();
    if !cert.is_valid() {
        return Err(CatalogError::Verification(cert));
    }
    let ctx = CliffordContext::with_prime_bound(rep, config.prime_bound)?;
    let codes = ctx.enumerate_codes()?;
    let classified = ctx.classify_all(&codes)?;

    if let Some(dir) = &config.emit_projectors {
        std::fs::create_dir_all(dir).map_err(|e| CatalogError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
        for code in &codes {
            emit_projector(dir, &bundle.name, code)?;
        }
    }

    let all: Vec<CodeRecord> = codes
        .iter()
        .zip(&classified)
        .map(|(code, c)| record(&ctx, code, c))
        .collect();
    let stabilizer = all.iter().filter(|r| r.verdict == VerdictKind::Stabilizer).count();
    let records: Vec<CodeRecord> = all.iter().filter(|r| config.accepts(r)).cloned().collect();
    let summary = AnalysisSummary {
        codes: all.len(),
        stabilizer,
        true_clifford: all.len() - stabilizer,
        reported: records.len(),
    };
    let g = ctx.group();
    Ok(AnalysisReport {
        name: bundle.name.clone(),
        group_order: g.order(),
        center_order: ctx.rep().center().order(),
        degree: ctx.rep().degree(),
        cyclotomic_order: bundle.cyclotomic_order,
        normal_subgroups: ctx.normals().len(),
        records,
        summary,
    })
}

impl AnalysisReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: |G| = {}, |Z(G)| = {}, degree {}, {} normal subgroups",
            self.name, self.group_order, self.center_order, self.degree, self.normal_subgroups
        );
        let _ = writeln!(
            out,
            "{:>4} {:>5} {:>4} {:>6} {:>3} {:>5} {:>5} {:>6}  {:<13} {:>12}",
            "N#", "|N|", "chi", "chi(1)", "m", "dimQ", "|T|", "|Z(t)|", "verdict", "undetectable"
        );
        for r in &self.records {
            let _ = writeln!(
                out,
                "{:>4} {:>5} {:>4} {:>6} {:>3} {:>5} {:>5} {:>6}  {:<13} {:>12}",
                r.normal_index,
                r.normal_order,
                r.chi_index,
                r.chi_degree,
                r.multiplicity,
                r.dim_q,
                r.inertia_order,
                r.quasikernel_order,
                r.verdict.as_str(),
                r.undetectable_count
            );
        }
        let _ = writeln!(
            out,
            "summary: {} codes, {} stabilizer, {} true_clifford, {} reported",
            self.summary.codes, self.summary.stabilizer, self.summary.true_clifford, self.summary.reported
        );
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "normal_index",
            "normal_order",
            "chi_index",
            "chi_degree",
            "multiplicity",
            "dimQ",
            "inertia_order",
            "quasikernel_order",
            "verdict",
            "undetectable_count",
        ])
        .expect("in-memory write");
        for r in &self.records {
            w.write_record([
                r.normal_index.to_string(),
                r.normal_order.to_string(),
                r.chi_index.to_string(),
                r.chi_degree.to_string(),
                r.multiplicity.to_string(),
                r.dim_q.to_string(),
                r.inertia_order.to_string(),
                r.quasikernel_order.to_string(),
                r.verdict.as_str().to_string(),
                r.undetectable_count.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
