//! Full pipeline from CSV files on disk to a markdown report.
//!
//!     cargo run --example demo_report [data-dir]

use std::path::PathBuf;

use zrisk::io::{demo, load_inputs, run_analysis, to_markdown, AnalysisConfig, InputPaths};

fn main() -> zrisk::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(demo::data_dir);
    let inputs = load_inputs(&InputPaths::in_dir(&dir))?;

    let config = AnalysisConfig {
        sensitivity_cases: Some("paper-sodct".into()),
        ..Default::default()
    };
    let report = run_analysis(&config, &inputs)?;
    print!("{}", to_markdown(&report));
    Ok(())
}
