//! Experiments, reports, random corpora, and the acceptance checklist.

pub mod corpus;
pub mod experiment;
pub mod naive;
pub mod report;
pub mod verify;

pub use corpus::Corpus;
pub use experiment::{
    build_construction, fit_asymptotic, run_experiment, ConstructionId, ConstructionParams,
    ExperimentSpec, Fitted, OptPreference, OptSource, RatioReport, RatioRow,
};
pub use naive::naive_best;
pub use report::{to_csv, to_json, to_markdown};
