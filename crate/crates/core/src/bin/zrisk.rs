use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zrisk::fuzzy::{rating_transform_table, weighting_transform_table, EiMode, LinguisticScale};
use zrisk::io::{self, AnalysisConfig, Format, InputPaths, InputSources, Source};
use zrisk::stats::{
    cronbach_alpha, kruskal_wallis, moderated_regression, split_by_strategy,
    ItemMatrix, ModelPreset, PresetForm, RegressionSpec, STRATEGY_THRESHOLD,
};
use zrisk::waspas::{MatrixMode, WaspasInput};
use zrisk::{Error, Result};

#[derive(Parser)]
#[command(name = "zrisk", version, about = "Z-number FMEA prioritization and survey statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weights, RPN, fuzzy and Z-WASPAS rankings and their comparison.
    Analyze(AnalyzeArgs),
    /// Rerun WASPAS under alternative criterion weights.
    Sensitivity(SensitivityArgs),
    /// Print the linguistic scales and transformation tables as JSON.
    Scales {
        #[arg(long, value_enum, default_value = "table")]
        ei_mode: EiArg,
    },
    /// Questionnaire statistics over a survey CSV.
    Stats {
        #[command(subcommand)]
        test: StatsCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EiArg {
    Table,
    Computed,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Z,
    Fuzzy,
}

#[derive(Args)]
struct Files {
    /// Use the bundled demo dataset instead of the file options.
    #[arg(long, conflicts_with_all = ["criteria", "failure_modes", "ratings"])]
    demo: bool,
    #[arg(long, required_unless_present = "demo")]
    criteria: Option<PathBuf>,
    #[arg(long, required_unless_present = "demo")]
    failure_modes: Option<PathBuf>,
    #[arg(long, required_unless_present = "demo")]
    ratings: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    files: Files,
    #[arg(long, required_unless_present = "demo", conflicts_with = "demo")]
    weighting: Option<PathBuf>,
    #[arg(long, conflicts_with = "demo")]
    sodct: Option<PathBuf>,
    /// JSON analysis configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for the report files; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct SensitivityArgs {
    #[command(flatten)]
    files: Files,
    /// Weight-case JSON file or the preset name `paper-sodct`.
    #[arg(long)]
    cases: String,
    #[arg(long, value_enum, default_value = "z")]
    mode: ModeArg,
    #[arg(long, default_value_t = zrisk::waspas::DEFAULT_TIE_TOLERANCE)]
    tie_tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Cronbach's alpha with item diagnostics.
    Cronbach {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated item columns; all columns when absent.
        #[arg(long, value_delimiter = ',')]
        items: Vec<String>,
    },
    /// Kruskal-Wallis H. Groups are the item columns, or the values of
    /// `--value` split by `--by`.
    Kruskal {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        items: Vec<String>,
        #[arg(long, requires = "value")]
        by: Option<String>,
        #[arg(long, requires = "by")]
        value: Option<String>,
    },
    /// Moderated regression `y = b0 + b1 x + b2 m + b3 x*m`.
    Regress {
        #[arg(long)]
        input: PathBuf,
        /// cls-fmcs, ds-nfmcs, cls-nfmcs or ds-fmcs.
        #[arg(long, conflicts_with_all = ["dependent", "predictor", "moderator"])]
        preset: Option<String>,
        /// Use the preset's interaction term exactly as first printed.
        #[arg(long, requires = "preset")]
        as_published: bool,
        #[arg(long, required_unless_present = "preset")]
        dependent: Option<String>,
        #[arg(long, required_unless_present = "preset")]
        predictor: Option<String>,
        #[arg(long, required_unless_present = "preset")]
        moderator: Option<String>,
        /// Also fit each strategy group split on this column.
        #[arg(long)]
        split_by: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage mistakes are input errors
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Analyze(a) => analyze(a, out),
        Command::Sensitivity(s) => sensitivity(s, out),
        Command::Scales { ei_mode } => {
            let mode = match ei_mode {
                EiArg::Table => EiMode::Table,
                EiArg::Computed => EiMode::Computed,
            };
            #[derive(Serialize)]
            struct Dump {
                scales: Vec<LinguisticScale>,
                ei_mode: EiMode,
                weighting_transform: Vec<zrisk::fuzzy::TransformRow>,
                rating_transform: Vec<zrisk::fuzzy::TransformRow>,
            }
            print_json(
                out,
                &Dump {
                    scales: LinguisticScale::all(),
                    ei_mode: mode,
                    weighting_transform: weighting_transform_table(mode),
                    rating_transform: rating_transform_table(),
                },
            )
        }
        Command::Stats { test } => stats(test, out),
    }
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let config = match &a.config {
        Some(p) => AnalysisConfig::load(p)?,
        None => AnalysisConfig::default(),
    };
    let sources = if a.files.demo {
        io::demo::sources()
    } else {
        InputSources::read(&InputPaths {
            criteria: a.files.criteria.expect("required by clap"),
            failure_modes: a.files.failure_modes.expect("required by clap"),
            weighting: a.weighting.expect("required by clap"),
            ratings: a.files.ratings.expect("required by clap"),
            sodct: a.sodct,
        })?
    };
    let inputs = io::parse_inputs(&sources)?;
    let report = io::run_analysis(&config, &inputs)?;
    let written = io::write_report(&report, a.format.into(), a.out.as_deref(), out)?;
    for p in written {
        eprintln!("wrote {}", p.display());
    }
    Ok(())
}

fn sensitivity(s: SensitivityArgs, out: &mut dyn Write) -> Result<()> {
    let (criteria, modes, ratings) = if s.files.demo {
        let d = io::demo::sources();
        (d.criteria, d.failure_modes, d.ratings)
    } else {
        (
            Source::read(&s.files.criteria.expect("required by clap"))?,
            Source::read(&s.files.failure_modes.expect("required by clap"))?,
            Source::read(&s.files.ratings.expect("required by clap"))?,
        )
    };
    let criteria = io::parse_criteria(&criteria)?;
    let modes = io::parse_failure_modes(&modes)?;
    let judgments = io::parse_ratings(&ratings, &modes, &criteria)?;
    let input = WaspasInput {
        alternatives: modes.iter().map(|m| m.id.clone()).collect(),
        criteria,
        judgments,
    };
    let mode = match s.mode {
        ModeArg::Z => MatrixMode::Z,
        ModeArg::Fuzzy => MatrixMode::Fuzzy,
    };
    if !(s.tie_tolerance.is_finite() && s.tie_tolerance > 0.0) {
        return Err(Error::Validation("tie tolerance must be positive".into()));
    }
    let section = io::run_sensitivity(&input, &s.cases, mode, s.tie_tolerance)?;
    let warnings = io::sensitivity_warnings(&section);
    let docs: Vec<(String, String)> = match Format::from(s.format) {
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                sensitivity: &'a io::SensitivitySection,
                warnings: &'a [io::Warning],
            }
            vec![("sensitivity.json".into(), json(&Doc { sensitivity: &section, warnings: &warnings })?)]
        }
        Format::Markdown => vec![("sensitivity.md".into(), io::sensitivity_markdown(&section))],
        Format::Csv => {
            let st = &section.stability;
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["failure_mode".to_string()];
            header.extend(st.cases.iter().cloned());
            let internal = |e: csv::Error| Error::Internal(e.to_string());
            w.write_record(&header).map_err(internal)?;
            for (a, ranks) in st.alternatives.iter().zip(&st.ranks) {
                let mut row = vec![a.clone()];
                row.extend(ranks.iter().map(usize::to_string));
                w.write_record(&row).map_err(internal)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
            vec![("sensitivity.csv".into(), String::from_utf8_lossy(&bytes).into_owned())]
        }
    };
    emit(out, s.out.as_deref(), &docs)
}

fn emit(out: &mut dyn Write, dir: Option<&Path>, docs: &[(String, String)]) -> Result<()> {
    match dir {
        None => {
            for (_, content) in docs {
                out.write_all(content.as_bytes()).map_err(|source| Error::Write {
                    path: "<stdout>".into(),
                    source,
                })?;
            }
        }
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|source| Error::Write {
                path: dir.to_path_buf(),
                source,
            })?;
            for (name, content) in docs {
                let path = dir.join(name);
                std::fs::write(&path, content).map_err(|source| Error::Write {
                    path: path.clone(),
                    source,
                })?;
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    emit(out, None, &[(String::new(), json(value)?)])
}

fn select(data: &ItemMatrix, items: &[String]) -> Result<ItemMatrix> {
    if items.is_empty() {
        return Ok(data.clone());
    }
    let cols = items
        .iter()
        .map(|c| {
            data.items
                .iter()
                .position(|i| i == c)
                .ok_or_else(|| Error::Validation(format!("unknown item column {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    ItemMatrix::new(
        data.respondents.clone(),
        items.to_vec(),
        data.rows.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect(),
    )
}

fn subset(data: &ItemMatrix, rows: &[usize]) -> Result<ItemMatrix> {
    ItemMatrix::new(
        rows.iter().map(|&i| data.respondents[i].clone()).collect(),
        data.items.clone(),
        rows.iter().map(|&i| data.rows[i].clone()).collect(),
    )
}

fn stats(test: StatsCommand, out: &mut dyn Write) -> Result<()> {
    match test {
        StatsCommand::Cronbach { input, items } => {
            let data = select(&io::load_survey(&input)?, &items)?;
            print_json(out, &cronbach_alpha(&data)?)
        }
        StatsCommand::Kruskal { input, items, by, value } => {
            let data = io::load_survey(&input)?;
            let (labels, groups): (Vec<String>, Vec<Vec<f64>>) = match (by, value) {
                (Some(by), Some(value)) => {
                    let key = column(&data, &by)?;
                    let val = column(&data, &value)?;
                    let mut map: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
                    for (k, v) in key.iter().zip(val) {
                        map.entry(k.to_string()).or_default().push(v);
                    }
                    map.into_iter().unzip()
                }
                _ => {
                    let data = select(&data, &items)?;
                    (data.items.clone(), data.columns())
                }
            };
            #[derive(Serialize)]
            struct Out {
                groups: Vec<String>,
                mean_ranks: Vec<f64>,
                #[serde(flatten)]
                test: zrisk::stats::KruskalWallis,
            }
            let test = kruskal_wallis(&groups)?;
            // pooled mean rank of each group
            let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
            let ranks = zrisk::ranking::mid_ranks(&pooled);
            let mut offset = 0;
            let group_ranks = groups
                .iter()
                .map(|g| {
                    let m = ranks[offset..offset + g.len()].iter().sum::<f64>() / g.len() as f64;
                    offset += g.len();
                    m
                })
                .collect();
            print_json(out, &Out { groups: labels, mean_ranks: group_ranks, test })
        }
        StatsCommand::Regress {
            input,
            preset,
            as_published,
            dependent,
            predictor,
            moderator,
            split_by,
        } => {
            let data = io::load_survey(&input)?;
            let spec = match preset {
                Some(p) => ModelPreset::parse(&p)?.spec(if as_published {
                    PresetForm::AsPublished
                } else {
                    PresetForm::Corrected
                }),
                None => RegressionSpec::new(
                    &dependent.expect("required by clap"),
                    &predictor.expect("required by clap"),
                    &moderator.expect("required by clap"),
                ),
            };
            #[derive(Serialize)]
            struct Group {
                group: String,
                n: usize,
                fit: zrisk::stats::RegressionFit,
            }
            let mut fits = vec![Group {
                group: "all".into(),
                n: data.n_respondents(),
                fit: moderated_regression(&spec, &data)?,
            }];
            if let Some(col) = split_by {
                let split = split_by_strategy(&column(&data, &col)?, STRATEGY_THRESHOLD);
                for (name, rows) in [
                    ("cost-leadership", split.cost_leadership),
                    ("differentiation", split.differentiation),
                ] {
                    let part = subset(&data, &rows)?;
                    fits.push(Group {
                        group: name.into(),
                        n: rows.len(),
                        fit: moderated_regression(&spec, &part)?,
                    });
                }
            }
            print_json(out, &fits)
        }
    }
}

fn column(data: &ItemMatrix, name: &str) -> Result<Vec<f64>> {
    data.column_by_name(name)
        .ok_or_else(|| Error::Validation(format!("unknown column {name:?}")))
}
