use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::report::{Report, SensitivitySection};
use crate::error::{Error, Result};
use crate::fmea::Method;
use crate::fuzzy::{round_half_up, Tfn};
use crate::waspas::RankingResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(Error::validation(format!(
                "unknown format {other:?}; expected json, csv or markdown"
            ))),
        }
    }
}

/// One serialized output document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFile {
    pub name: String,
    pub content: String,
}

/// Serialize `report`. JSON and markdown give one document; CSV gives one
/// document per table section.
pub fn emit_report(report: &Report, format: Format) -> Result<Vec<OutputFile>> {
    Ok(match format {
        Format::Json => vec![OutputFile {
            name: "report.json".into(),
            content: to_json(report)?,
        }],
        Format::Markdown => vec![OutputFile {
            name: "report.md".into(),
            content: to_markdown(report),
        }],
        Format::Csv => to_csv(report)?,
    })
}

/// Emit into `out` (one file per document) or, without a directory, to
/// `stdout`. Returns the paths written.
pub fn write_report(
    report: &Report,
    format: Format,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<Vec<PathBuf>> {
    let files = emit_report(report, format)?;
    let Some(dir) = out else {
        let multi = files.len() > 1;
        let io_err = |source| Error::Write {
            path: PathBuf::from("<stdout>"),
            source,
        };
        for f in &files {
            if multi {
                writeln!(stdout, "# {}", f.name).map_err(io_err)?;
            }
            stdout.write_all(f.content.as_bytes()).map_err(io_err)?;
        }
        return Ok(Vec::new());
    };
    std::fs::create_dir_all(dir).map_err(|source| Error::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    files
        .into_iter()
        .map(|f| {
            let path = dir.join(&f.name);
            std::fs::write(&path, f.content).map_err(|source| Error::Write {
                path: path.clone(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}

pub fn to_json(report: &Report) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

// ---- csv ----

fn csv_doc(name: &str, header: &[String], rows: &[Vec<String>]) -> Result<OutputFile> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(header).map_err(internal)?;
    for r in rows {
        w.write_record(r).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(OutputFile {
        name: name.into(),
        content: String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))?,
    })
}

fn strings<const N: usize>(h: [&str; N]) -> Vec<String> {
    h.iter().map(|s| s.to_string()).collect()
}

fn tfn_fields(t: &Tfn) -> [String; 3] {
    [t.a().to_string(), t.b().to_string(), t.c().to_string()]
}

fn waspas_rows(r: &RankingResult) -> Vec<Vec<String>> {
    r.scores
        .iter()
        .map(|s| {
            let mut row = vec![s.id.clone()];
            row.extend(tfn_fields(&s.q));
            row.extend(tfn_fields(&s.p));
            row.extend([
                s.q_bar.to_string(),
                s.p_bar.to_string(),
                s.k.to_string(),
                s.rank.to_string(),
                r.lambda.to_string(),
            ]);
            row
        })
        .collect()
}

fn method_key(m: Method) -> &'static str {
    match m {
        Method::Rpn => "rpn",
        Method::FuzzyWaspas => "fuzzy_waspas",
        Method::ZWaspas => "z_waspas",
    }
}

fn to_csv(report: &Report) -> Result<Vec<OutputFile>> {
    let mut files = Vec::new();

    let mut meta = vec![
        vec!["tool".to_string(), report.metadata.tool.to_string()],
        vec!["version".to_string(), report.metadata.version.to_string()],
        vec![
            "config".to_string(),
            serde_json::to_string(&report.metadata.config).map_err(|e| Error::Internal(e.to_string()))?,
        ],
        vec!["experts".to_string(), report.metadata.experts.to_string()],
    ];
    for (role, d) in &report.metadata.inputs {
        meta.push(vec![format!("input.{role}"), format!("{} sha256:{}", d.file, d.sha256)]);
    }
    files.push(csv_doc("metadata.csv", &strings(["key", "value"]), &meta)?);

    let rows: Vec<Vec<String>> = report
        .weights
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.criterion.clone(), r.position.to_string()];
            row.extend(tfn_fields(&r.q));
            row.extend(tfn_fields(&r.fuzzy));
            row.push(r.crisp.to_string());
            row
        })
        .collect();
    files.push(csv_doc(
        "weights.csv",
        &strings(["criterion", "position", "q_a", "q_b", "q_c", "w_a", "w_b", "w_c", "crisp"]),
        &rows,
    )?);

    if let Some(rpn) = &report.rpn {
        let rows: Vec<Vec<String>> = rpn
            .scores
            .iter()
            .map(|e| {
                vec![
                    e.id.clone(),
                    e.rpn.value.to_string(),
                    e.rpn.rounded.to_string(),
                    e.rank.to_string(),
                ]
            })
            .collect();
        files.push(csv_doc("rpn.csv", &strings(["failure_mode", "rpn", "rpn_rounded", "rank"]), &rows)?);
    }
    let waspas_header = strings([
        "failure_mode", "q_a", "q_b", "q_c", "p_a", "p_b", "p_c", "q_bar", "p_bar", "k", "rank", "lambda",
    ]);
    if let Some(r) = &report.fuzzy_waspas {
        files.push(csv_doc("fuzzy_waspas.csv", &waspas_header, &waspas_rows(r))?);
    }
    if let Some(r) = &report.z_waspas {
        files.push(csv_doc("z_waspas.csv", &waspas_header, &waspas_rows(r))?);
    }

    let cmp = &report.comparison;
    let mut header = vec!["failure_mode".to_string()];
    for m in &cmp.methods {
        header.push(format!("{}_score", method_key(*m)));
        header.push(format!("{}_rank", method_key(*m)));
    }
    let rows: Vec<Vec<String>> = cmp
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.id.clone()];
            for c in &r.cells {
                row.push(c.score.to_string());
                row.push(c.rank.to_string());
            }
            row
        })
        .collect();
    files.push(csv_doc("comparison.csv", &header, &rows)?);

    if let Some(s) = &report.sensitivity {
        let st = &s.stability;
        let mut header = vec!["failure_mode".to_string()];
        header.extend(st.cases.iter().cloned());
        header.extend(["min_rank".to_string(), "max_rank".to_string()]);
        let rows: Vec<Vec<String>> = st
            .alternatives
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut row = vec![a.clone()];
                row.extend(st.ranks[i].iter().map(usize::to_string));
                row.push(st.ranges[i].min.to_string());
                row.push(st.ranges[i].max.to_string());
                row
            })
            .collect();
        files.push(csv_doc("sensitivity.csv", &header, &rows)?);
        let rows: Vec<Vec<String>> = st
            .pairwise
            .iter()
            .map(|p| {
                vec![
                    p.first.clone(),
                    p.second.clone(),
                    p.spearman.map_or_else(String::new, |v| v.to_string()),
                ]
            })
            .collect();
        files.push(csv_doc("sensitivity_spearman.csv", &strings(["first", "second", "spearman"]), &rows)?);
    }

    let rows: Vec<Vec<String>> = report
        .warnings
        .iter()
        .map(|w| vec![w.code.clone(), w.message.clone()])
        .collect();
    files.push(csv_doc("warnings.csv", &strings(["code", "message"]), &rows)?);
    Ok(files)
}

// ---- markdown ----

fn fixed(x: f64, places: u32) -> String {
    format!("{:.*}", places as usize, round_half_up(x, places))
}

fn tfn_md(t: &Tfn, places: u32) -> String {
    format!("({}, {}, {})", fixed(t.a(), places), fixed(t.b(), places), fixed(t.c(), places))
}

fn table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out.push('\n');
}

/// Header of the comparison table for the given methods.
pub fn comparison_header(methods: &[Method]) -> Vec<String> {
    let mut h = vec!["Failure mode".to_string()];
    for m in methods {
        h.push(m.score_label().to_string());
        h.push("Rank".to_string());
    }
    h
}

pub fn to_markdown(report: &Report) -> String {
    let places = report.metadata.config.rounding;
    let mut out = String::new();
    out.push_str("# Failure mode prioritization\n\n");
    let methods: Vec<&str> = report.comparison.methods.iter().map(|m| m.title()).collect();
    let _ = writeln!(
        out,
        "{} failure modes, {} criteria, {} experts. Methods: {}.\n",
        report.failure_modes.len(),
        report.weights.order.len(),
        report.metadata.experts,
        methods.join(", ")
    );

    out.push_str("## Failure modes\n\n");
    let rows: Vec<Vec<String>> = report
        .failure_modes
        .iter()
        .map(|(id, label)| vec![id.clone(), label.clone()])
        .collect();
    table(&mut out, &strings(["Id", "Failure mode"]), &rows);

    out.push_str("## Criterion weights\n\n");
    let rows: Vec<Vec<String>> = report
        .weights
        .rows
        .iter()
        .map(|r| {
            vec![
                r.position.to_string(),
                r.criterion.clone(),
                r.comparative.map_or_else(|| "-".to_string(), |t| tfn_md(&t, places)),
                tfn_md(&r.fuzzy, places),
                fixed(r.crisp, places),
            ]
        })
        .collect();
    table(
        &mut out,
        &strings(["Position", "Criterion", "Comparative importance", "Fuzzy weight", "Crisp weight"]),
        &rows,
    );

    out.push_str("## Method comparison\n\n");
    let groups: Vec<String> = report
        .comparison
        .methods
        .iter()
        .map(|m| format!("{} ({}, Rank)", m.title(), m.score_label()))
        .collect();
    let _ = writeln!(out, "Column groups: {}.\n", groups.join(", "));
    let rows: Vec<Vec<String>> = report
        .comparison
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.id.clone()];
            for (m, c) in report.comparison.methods.iter().zip(&r.cells) {
                row.push(match m {
                    Method::Rpn => fixed(c.score, 0),
                    _ => fixed(c.score, places.max(2)),
                });
                row.push(c.rank.to_string());
            }
            row
        })
        .collect();
    table(&mut out, &comparison_header(&report.comparison.methods), &rows);
    for a in &report.comparison.agreement {
        let _ = writeln!(
            out,
            "- Spearman({}, {}) = {}",
            a.first.title(),
            a.second.title(),
            a.spearman.map_or_else(|| "undefined".to_string(), |v| fixed(v, 4))
        );
    }
    if !report.comparison.agreement.is_empty() {
        out.push('\n');
    }

    if let Some(s) = &report.sensitivity {
        out.push_str(&sensitivity_markdown(s));
    }

    if !report.warnings.is_empty() {
        out.push_str("## Warnings\n\n");
        for w in &report.warnings {
            let _ = writeln!(out, "- `{}`: {}", w.code, w.message);
        }
        out.push('\n');
    }
    out
}

/// Rank matrix (failure modes × cases) with rank ranges.
pub fn sensitivity_markdown(s: &SensitivitySection) -> String {
    let st = &s.stability;
    let mut out = String::from("## Sensitivity analysis\n\n");
    let _ = writeln!(out, "Weight cases from `{}`.\n", s.source);
    let mut header = vec!["Failure mode".to_string()];
    header.extend(st.cases.iter().cloned());
    header.push("Range".to_string());
    let rows: Vec<Vec<String>> = st
        .alternatives
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut row = vec![a.clone()];
            row.extend(st.ranks[i].iter().map(usize::to_string));
            row.push(format!("{}-{}", st.ranges[i].min, st.ranges[i].max));
            row
        })
        .collect();
    table(&mut out, &header, &rows);
    let _ = writeln!(
        out,
        "Ranked first in every case: {}\n",
        if st.always_first.is_empty() {
            "none".to_string()
        } else {
            st.always_first.join(", ")
        }
    );
    if !st.pairwise.is_empty() {
        let rows: Vec<Vec<String>> = st
            .pairwise
            .iter()
            .map(|p| {
                vec![
                    p.first.clone(),
                    p.second.clone(),
                    p.spearman.map_or_else(|| "undefined".to_string(), |v| fixed(v, 4)),
                ]
            })
            .collect();
        table(&mut out, &strings(["Case", "Case", "Spearman"]), &rows);
    }
    out
}
