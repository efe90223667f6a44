use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use zrisk::fmea::Method;
use zrisk::io::{demo, emit_report, run_analysis, to_json, to_markdown, AnalysisConfig, Format};

fn zrisk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zrisk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn demo_file(name: &str) -> String {
    demo::data_dir().join(name).to_string_lossy().into_owned()
}

fn copy_demo(dir: &Path) -> Vec<PathBuf> {
    ["criteria.csv", "failure_modes.csv", "rating_judgments.csv", "weighting_judgments.csv", "sodct_ratings.csv"]
        .iter()
        .map(|f| {
            let to = dir.join(f);
            fs::copy(demo::data_dir().join(f), &to).unwrap();
            to
        })
        .collect()
}

fn analyze_args(files: &[PathBuf]) -> Vec<String> {
    let mut v = vec!["analyze".to_string()];
    for (flag, f) in ["--criteria", "--failure-modes", "--ratings", "--weighting", "--sodct"].iter().zip(files) {
        v.push(flag.to_string());
        v.push(f.to_string_lossy().into_owned());
    }
    v
}

#[test]
fn z_only_config_drops_other_sections() {
    let config = AnalysisConfig::from_json(r#"{"methods": ["z-waspas"]}"#, "inline").unwrap();
    let report = run_analysis(&config, &demo::inputs().unwrap()).unwrap();
    let json: Value = serde_json::from_str(&to_json(&report).unwrap()).unwrap();
    assert!(json.get("rpn").is_none());
    assert!(json.get("fuzzy_waspas").is_none());
    assert!(json.get("z_waspas").is_some());
    assert_eq!(json["comparison"]["methods"], serde_json::json!(["z-waspas"]));

    let names: Vec<String> = emit_report(&report, Format::Csv).unwrap().into_iter().map(|f| f.name).collect();
    assert!(!names.contains(&"rpn.csv".to_string()));
    assert!(!names.contains(&"fuzzy_waspas.csv".to_string()));
}

#[test]
fn csv_comparison_round_trips_ranks() {
    let report = run_analysis(&AnalysisConfig::default(), &demo::inputs().unwrap()).unwrap();
    let files = emit_report(&report, Format::Csv).unwrap();
    let cmp = files.iter().find(|f| f.name == "comparison.csv").unwrap();
    let mut rd = csv::Reader::from_reader(cmp.content.as_bytes());
    let header = rd.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    for (method, key) in [(Method::Rpn, "rpn"), (Method::FuzzyWaspas, "fuzzy_waspas"), (Method::ZWaspas, "z_waspas")] {
        let col = header.iter().position(|h| h == format!("{key}_rank")).unwrap();
        let ranks: Vec<usize> = rows.iter().map(|r| r[col].parse().unwrap()).collect();
        assert_eq!(Some(ranks), report.comparison.ranks(method), "{key}");
        let col = header.iter().position(|h| h == format!("{key}_score")).unwrap();
        for (r, row) in rows.iter().zip(&report.comparison.rows) {
            let k = report.comparison.methods.iter().position(|&m| m == method).unwrap();
            assert_eq!(r[col].parse::<f64>().unwrap(), row.cells[k].score);
        }
    }
}

#[test]
fn markdown_has_no_sensitivity_without_cases() {
    let report = run_analysis(&AnalysisConfig::default(), &demo::inputs().unwrap()).unwrap();
    let md = to_markdown(&report);
    assert!(!md.contains("## Sensitivity"));
    assert!(md.contains("## Method comparison"));

    let config = AnalysisConfig { sensitivity_cases: Some("paper-sodct".into()), ..Default::default() };
    let md = to_markdown(&run_analysis(&config, &demo::inputs().unwrap()).unwrap());
    assert!(md.contains("## Sensitivity"));
}

#[test]
fn analyze_from_files_matches_demo() {
    let a = zrisk(&["analyze", "--demo"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let args = [
        "analyze",
        "--criteria",
        &demo_file("criteria.csv"),
        "--failure-modes",
        &demo_file("failure_modes.csv"),
        "--ratings",
        &demo_file("rating_judgments.csv"),
        "--weighting",
        &demo_file("weighting_judgments.csv"),
        "--sodct",
        &demo_file("sodct_ratings.csv"),
    ];
    let b = zrisk(&args);
    assert_eq!(b.status.code(), Some(0), "{}", stderr(&b));
    let ja: Value = serde_json::from_slice(&a.stdout).unwrap();
    let jb: Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(ja["comparison"], jb["comparison"]);
}

#[test]
fn csv_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = zrisk(&["analyze", "--demo", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["metadata.csv", "weights.csv", "rpn.csv", "fuzzy_waspas.csv", "z_waspas.csv", "comparison.csv", "warnings.csv"] {
        assert!(out.join(f).is_file(), "{f}");
    }
}

#[test]
fn bad_rating_term_exits_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let files = copy_demo(dir.path());
    let ratings = &files[2];
    let text = fs::read_to_string(ratings).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut fields: Vec<&str> = lines[3].split(',').collect();
    fields[3] = "XX";
    lines[3] = fields.join(",");
    fs::write(ratings, lines.join("\n") + "\n").unwrap();

    let o = zrisk(&analyze_args(&files).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("rating_judgments.csv:4:"), "{err}");
    assert!(err.contains("XX"), "{err}");
}

#[test]
fn missing_file_and_usage_errors_exit_1() {
    let o = zrisk(&["analyze", "--criteria", "/nonexistent/c.csv", "--failure-modes", "x", "--ratings", "y", "--weighting", "z"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let o = zrisk(&["analyze", "--format", "yaml", "--demo"]);
    assert_eq!(o.status.code(), Some(1));
    let o = zrisk(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(zrisk(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = blocker.join("sub");
    let o = zrisk(&["analyze", "--demo", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn invalid_config_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"methods": []}"#).unwrap();
    let o = zrisk(&["analyze", "--demo", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    fs::write(&cfg, r#"{"rounding": 2, "colour": "red"}"#).unwrap();
    let o = zrisk(&["analyze", "--demo", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sensitivity_subcommand() {
    let o = zrisk(&["sensitivity", "--demo", "--cases", "paper-sodct"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ranks = j["stability"]["ranks"].as_array().or_else(|| j["sensitivity"]["stability"]["ranks"].as_array()).unwrap();
    assert_eq!(ranks.len(), 9);
    assert!(ranks.iter().all(|r| r.as_array().unwrap().len() == 5));

    let o = zrisk(&["sensitivity", "--demo", "--cases", "paper-sodct", "--format", "markdown"]);
    assert!(stdout(&o).contains("Spearman"));
}

#[test]
fn scales_dump() {
    let o = zrisk(&["scales"]);
    assert_eq!(o.status.code(), Some(0));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = j.to_string();
    assert!(text.contains("VLI") && text.contains("EI"));
}

fn survey(dir: &Path) -> PathBuf {
    let mut rng = StdRng::seed_from_u64(7);
    let mut text = String::from("respondent_id,P,CLS,DS,FMCS,NFMCS\n");
    for i in 0..60 {
        let cls: f64 = rng.gen_range(1.0..5.0);
        let ds: f64 = rng.gen_range(1.0..5.0);
        let f: f64 = rng.gen_range(1.0..5.0);
        let nf: f64 = rng.gen_range(1.0..5.0);
        let p = 0.5 + 0.4 * cls + 0.2 * f - 0.05 * cls * f + rng.gen_range(-0.3..0.3);
        text.push_str(&format!("R{i},{p:.3},{cls:.3},{ds:.3},{f:.3},{nf:.3}\n"));
    }
    let path = dir.join("survey.csv");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn stats_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let s = survey(dir.path());
    let s = s.to_str().unwrap();

    let o = zrisk(&["stats", "cronbach", "--input", s, "--items", "CLS,DS,FMCS"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("alpha"));

    let o = zrisk(&["stats", "kruskal", "--input", s, "--items", "CLS,DS,FMCS,NFMCS"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(j.to_string().contains("\"p\""));

    for preset in ["cls-fmcs", "ds-nfmcs", "cls-nfmcs", "ds-fmcs"] {
        let o = zrisk(&["stats", "regress", "--input", s, "--preset", preset, "--split-by", "CLS"]);
        assert_eq!(o.status.code(), Some(0), "{preset}: {}", stderr(&o));
        let o = zrisk(&["stats", "regress", "--input", s, "--preset", preset, "--as-published"]);
        assert_eq!(o.status.code(), Some(0), "{preset}: {}", stderr(&o));
    }

    let o = zrisk(&["stats", "regress", "--input", s, "--dependent", "P", "--predictor", "CLS", "--moderator", "NOPE"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn collinear_survey_names_the_column() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("respondent_id,y,x,m\n");
    for i in 0..12 {
        let x = i as f64;
        text.push_str(&format!("R{i},{},{x},{}\n", (i * 7 % 5) as f64, 2.0 * x + 1.0));
    }
    let path = dir.path().join("s.csv");
    fs::write(&path, text).unwrap();
    let o = zrisk(&["stats", "regress", "--input", path.to_str().unwrap(), "--dependent", "y", "--predictor", "x", "--moderator", "m"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("m"), "{}", stderr(&o));
}
