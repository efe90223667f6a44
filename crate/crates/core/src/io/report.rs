use std::collections::BTreeMap;

use serde::Serialize;

use super::config::AnalysisConfig;
use super::load::{InputDigest, Inputs};
use crate::error::Result;
use crate::fmea::{compare_methods, rank_by_rpn, rpn_scores, Method, MethodColumn, MethodComparison, RpnRanking};
use crate::fuzzy::{EiMode, Tfn};
use crate::sensitivity::{load_cases, stability_sweep, StabilityReport, WeightCase, SODCT_PRESET};
use crate::swara::{derive_weights, Recurrence};
use crate::waspas::{run_waspas, MatrixMode, RankingResult, WaspasInput};

pub const TOOL: &str = "zrisk";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: AnalysisConfig,
    pub inputs: BTreeMap<String, InputDigest>,
    pub experts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightRow {
    pub criterion: String,
    /// 1 for the aggregate top criterion.
    pub position: usize,
    /// Aggregated comparative importance against the criterion above;
    /// absent for the top criterion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparative: Option<Tfn>,
    pub q: Tfn,
    pub fuzzy: Tfn,
    pub crisp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightsSection {
    /// Criterion ids in aggregated importance order.
    pub order: Vec<String>,
    pub rows: Vec<WeightRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Warning {
    pub code: String,
    pub message: String,
}

impl Warning {
    fn new(code: &str, message: impl Into<String>) -> Self {
        Self {
            code: code.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivitySection {
    pub source: String,
    pub mode: MatrixMode,
    pub cases: Vec<WeightCase>,
    pub stability: StabilityReport,
}

/// Everything one analysis produces. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub metadata: Metadata,
    /// Failure-mode ids and labels in input order.
    pub failure_modes: Vec<(String, String)>,
    pub weights: WeightsSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rpn: Option<RpnRanking>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fuzzy_waspas: Option<RankingResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_waspas: Option<RankingResult>,
    pub comparison: MethodComparison,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sensitivity: Option<SensitivitySection>,
    pub warnings: Vec<Warning>,
}

impl Report {
    pub fn label(&self, id: &str) -> &str {
        self.failure_modes
            .iter()
            .find(|(i, _)| i == id)
            .map_or("", |(_, l)| l.as_str())
    }
}

fn tie_warning(method: Method, ties: &[Vec<String>]) -> Option<Warning> {
    if ties.is_empty() {
        return None;
    }
    let groups: Vec<String> = ties.iter().map(|g| format!("{{{}}}", g.join(", "))).collect();
    Some(Warning::new(
        &format!("ties.{method}"),
        format!("{} produces tied ranks: {}", method.title(), groups.join(" ")),
    ))
}

/// Z-SWARA weights, the selected ranking methods, their comparison and the
/// optional sensitivity sweep.
pub fn run_analysis(config: &AnalysisConfig, inputs: &Inputs) -> Result<Report> {
    config.validate()?;
    let mut warnings = Vec::new();
    let ids = inputs.failure_mode_ids();
    let waspas_input = inputs.waspas_input();

    let run_rpn = config.runs(Method::Rpn);
    if run_rpn && inputs.sodct.is_none() {
        warnings.push(Warning::new(
            "rpn.skipped",
            "no SODCT ratings were supplied; the RPN method is skipped",
        ));
    }
    // checked before any computation runs
    let cases = config.sensitivity_cases.as_deref().map(load_cases).transpose()?;
    if config.runs(Method::ZWaspas) || config.sensitivity_mode == MatrixMode::Z && cases.is_some() {
        crate::waspas::build_decision_matrix(
            &waspas_input.judgments,
            &waspas_input.alternatives,
            &waspas_input.criteria,
            MatrixMode::Z,
        )?;
    }

    let swara = derive_weights(&inputs.weighting, config.swara_options())?;
    let w = &swara.weights;
    if config.swara_recurrence == Recurrence::Literal {
        warnings.push(Warning::new(
            "swara.literal_recurrence",
            "literal recurrence divides by the comparative importance directly; lower-ranked criteria can receive larger weights",
        ));
    }
    if config.ei_mode == EiMode::Computed {
        warnings.push(Warning::new(
            "swara.ei_computed",
            "EI judgments are converted by the Z-number rule instead of mapping to (1, 1, 1)",
        ));
    }
    let weights = WeightsSection {
        order: w.criteria.clone(),
        rows: (0..w.criteria.len())
            .map(|i| WeightRow {
                criterion: w.criteria[i].clone(),
                position: i + 1,
                comparative: i.checked_sub(1).map(|k| swara.comparative[k]),
                q: w.fuzzy_q[i],
                fuzzy: w.fuzzy_w[i],
                crisp: w.crisp_w[i],
            })
            .collect(),
    };
    let crisp = w.crisp_in_order(&waspas_input.criterion_ids())?;

    let rpn = match (&inputs.sodct, run_rpn) {
        (Some(sodct), true) => Some(rank_by_rpn(&ids, &rpn_scores(sodct, &ids)?)?),
        _ => None,
    };
    let waspas = |mode| -> Result<RankingResult> {
        Ok(run_waspas(&waspas_input, &crisp, mode, config.tie_tolerance)?.ranking)
    };
    let fuzzy_waspas = config
        .runs(Method::FuzzyWaspas)
        .then(|| waspas(MatrixMode::Fuzzy))
        .transpose()?;
    let z_waspas = config
        .runs(Method::ZWaspas)
        .then(|| waspas(MatrixMode::Z))
        .transpose()?;

    let mut columns = Vec::new();
    if let Some(r) = &rpn {
        columns.push(MethodColumn::from_rpn(r));
        warnings.extend(tie_warning(Method::Rpn, &r.ties));
    }
    if let Some(r) = &fuzzy_waspas {
        columns.push(MethodColumn::from_waspas(Method::FuzzyWaspas, r));
        warnings.extend(tie_warning(Method::FuzzyWaspas, &r.ties));
    }
    if let Some(r) = &z_waspas {
        columns.push(MethodColumn::from_waspas(Method::ZWaspas, r));
        warnings.extend(tie_warning(Method::ZWaspas, &r.ties));
    }
    let comparison = compare_methods(&columns)?;

    let sensitivity = match (cases, &config.sensitivity_cases) {
        (Some(cases), Some(source)) => {
            let section = sweep_section(&waspas_input, source, cases, config.sensitivity_mode, config.tie_tolerance)?;
            warnings.extend(sensitivity_warnings(&section));
            Some(section)
        }
        _ => None,
    };

    let experts = inputs
        .weighting
        .iter()
        .map(|j| j.expert_id.as_str())
        .chain(inputs.ratings.iter().map(|r| r.expert_id.as_str()))
        .collect::<std::collections::BTreeSet<_>>()
        .len();

    Ok(Report {
        metadata: Metadata {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            config: config.clone(),
            inputs: inputs.digests.clone(),
            experts,
        },
        failure_modes: inputs
            .failure_modes
            .iter()
            .map(|m| (m.id.clone(), m.label.clone()))
            .collect(),
        weights,
        rpn,
        fuzzy_waspas,
        z_waspas,
        comparison,
        sensitivity,
        warnings,
    })
}

fn sweep_section(
    input: &WaspasInput,
    source: &str,
    cases: Vec<WeightCase>,
    mode: MatrixMode,
    tie_tolerance: f64,
) -> Result<SensitivitySection> {
    let stability = stability_sweep(input, &cases, mode, tie_tolerance)?;
    Ok(SensitivitySection {
        source: source.to_string(),
        mode,
        cases,
        stability,
    })
}

/// Notes about a sweep: preset caveats and per-case ties.
pub fn sensitivity_warnings(section: &SensitivitySection) -> Vec<Warning> {
    let mut warnings = Vec::new();
    if section.source == SODCT_PRESET {
        warnings.push(Warning::new(
            "sensitivity.fuzzy_annotation",
            "the preset's fuzzy weight triples are not ordered and do not match the crisp values; only the crisp values are used",
        ));
    }
    let st = &section.stability;
    for (case, ties) in st.cases.iter().zip(&st.ties) {
        if !ties.is_empty() {
            warnings.push(Warning::new(
                "ties.sensitivity",
                format!("{case} has {} tie group(s)", ties.len()),
            ));
        }
    }
    warnings
}

/// Weight-case sweep alone; `cases` is a preset name or a JSON file path.
pub fn run_sensitivity(
    input: &WaspasInput,
    cases: &str,
    mode: MatrixMode,
    tie_tolerance: f64,
) -> Result<SensitivitySection> {
    sweep_section(input, cases, load_cases(cases)?, mode, tie_tolerance)
}
