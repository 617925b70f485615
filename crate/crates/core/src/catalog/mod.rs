//! Bundle ingestion, shipped fixtures, the analysis pipeline and surveys.

mod analyze;
mod builders;
mod bundle;
mod survey;

use thiserror::Error;

use crate::chartab::ChartabError;
use crate::clifford::CliffordError;
use crate::group::GroupError;
use crate::repn::ErrorGroupCert;

pub use analyze::{
    analyze, AnalysisReport, AnalysisSummary, CodeRecord, EvidenceRecord, OutputFormat, RunConfig,
    WitnessRecord,
};
pub use builders::{
    example1, example1_generators, example1_named_elements, example2, example2_d,
    example2_generators, kron, make_pauli_bundle,
};
pub use bundle::{load_bundle, save_bundle, GroupBundle};
pub use survey::{survey, survey_paths, SurveyFailure, SurveyReport, SurveyRow};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {path}: {message}")]
    Field { path: String, message: String },
    #[error("bundle has no generators")]
    NoGenerators,
    #[error("generator {0} is not unitary")]
    NotUnitary(usize),
    #[error("qubit count {0} outside 1..=3")]
    QubitsOutOfRange(u32),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(
        "not an error group: degree {}, |G| = {}, |Z(G)| = {}, faithful = {}, irreducible = {}, d² = [G:Z(G)] is {}",
        .0.degree, .0.group_order, .0.center_order, .0.faithful, .0.irreducible, .0.degree_squared_equals_index
    )]
    Verification(ErrorGroupCert),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

impl CatalogError {
    /// Input problems, as opposed to failed verification or internal
    /// inconsistencies.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            CatalogError::Verification(_) | CatalogError::Clifford(_) | CatalogError::Chartab(_)
        )
    }
}
