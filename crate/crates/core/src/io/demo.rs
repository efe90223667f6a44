//! Bundled demo dataset: nine business-risk failure modes, the five SODCT
//! factors as criteria and three synthetic experts.

use super::load::{parse_inputs, InputSources, Inputs, Source};
use crate::error::Result;

pub const CRITERIA: &str = include_str!("../../data/demo/criteria.csv");
pub const FAILURE_MODES: &str = include_str!("../../data/demo/failure_modes.csv");
pub const WEIGHTING: &str = include_str!("../../data/demo/weighting_judgments.csv");
pub const RATINGS: &str = include_str!("../../data/demo/rating_judgments.csv");
pub const SODCT: &str = include_str!("../../data/demo/sodct_ratings.csv");

pub fn sources() -> InputSources {
    InputSources {
        criteria: Source::new("criteria.csv", CRITERIA),
        failure_modes: Source::new("failure_modes.csv", FAILURE_MODES),
        weighting: Source::new("weighting_judgments.csv", WEIGHTING),
        ratings: Source::new("rating_judgments.csv", RATINGS),
        sodct: Some(Source::new("sodct_ratings.csv", SODCT)),
    }
}

pub fn inputs() -> Result<Inputs> {
    parse_inputs(&sources())
}

/// Directory holding the demo CSV files in a source checkout.
pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/demo")
}
