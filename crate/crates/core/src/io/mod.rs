//! Input files, analysis configuration, the end-to-end pipeline and report
//! output.

mod config;
pub mod demo;
mod emit;
mod load;
mod report;

pub use config::AnalysisConfig;
pub use emit::{comparison_header, emit_report, sensitivity_markdown, to_json, to_markdown, write_report, Format, OutputFile};
pub use load::{
    load_inputs, load_survey, parse_criteria, parse_failure_modes, parse_inputs, parse_ratings,
    parse_sodct, parse_survey, parse_weighting, InputDigest, InputPaths, InputSources, Inputs,
    Source, CRITERIA_HEADER, FAILURE_MODES_HEADER, RATINGS_HEADER, SODCT_HEADER, WEIGHTING_HEADER,
};
pub use report::{
    run_analysis, run_sensitivity, sensitivity_warnings, Metadata, Report, SensitivitySection, Warning, WeightRow, WeightsSection, TOOL,
};
