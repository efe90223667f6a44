//! Weight-case sweeps and rank stability.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ranking::mid_ranks;
use crate::waspas::{run_waspas, MatrixMode, RankingResult, WaspasInput};

/// Name under which the built-in SODCT weight cases are selected.
pub const SODCT_PRESET: &str = "paper-sodct";

/// A crisp weight vector to substitute for the SWARA weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightCase {
    pub case_id: String,
    pub weights: BTreeMap<String, f64>,
    /// Fuzzy weight triples carried for reference only. They are not
    /// required to be ordered and never enter the computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy: Option<BTreeMap<String, [f64; 3]>>,
}

impl WeightCase {
    pub fn new(case_id: &str, weights: &[(&str, f64)]) -> Self {
        Self {
            case_id: case_id.to_string(),
            weights: weights.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            fuzzy: None,
        }
    }

    /// Weights aligned to `criteria`, rescaled to sum to one.
    pub fn normalized_for(&self, criteria: &[String]) -> Result<Vec<f64>> {
        let extra: Vec<&String> = self
            .weights
            .keys()
            .filter(|k| !criteria.contains(k))
            .collect();
        let missing: Vec<&String> = criteria
            .iter()
            .filter(|c| !self.weights.contains_key(*c))
            .collect();
        if !extra.is_empty() || !missing.is_empty() {
            return Err(Error::validation(format!(
                "weight case {:?} does not match the criteria: missing {missing:?}, extra {extra:?}",
                self.case_id
            )));
        }
        let raw: Vec<f64> = criteria.iter().map(|c| self.weights[c]).collect();
        if let Some(w) = raw.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::validation(format!(
                "weight case {:?} has invalid weight {w}",
                self.case_id
            )));
        }
        let total: f64 = raw.iter().sum();
        if total <= 0.0 {
            return Err(Error::degenerate(
                "apply_weight_case",
                format!("weight case {:?} has all-zero weights", self.case_id),
            ));
        }
        Ok(raw.iter().map(|w| w / total).collect())
    }
}

/// The five SODCT weight cases (crisp values, with the reference fuzzy
/// triples attached as annotation).
pub fn sodct_preset_cases() -> Vec<WeightCase> {
    const FACTORS: [&str; 5] = ["S", "O", "D", "C", "T"];
    #[rustfmt::skip]
    let crisp: [[f64; 5]; 5] = [
        [0.234, 0.363, 0.115, 0.185, 0.103],
        [0.5, 0.2, 0.2, 0.05, 0.05],
        [0.28, 0.05, 0.28, 0.11, 0.28],
        [0.46, 0.02, 0.11, 0.29, 0.12],
        [0.08, 0.19, 0.29, 0.29, 0.15],
    ];
    #[rustfmt::skip]
    let fuzzy: [[[f64; 3]; 5]; 5] = [
        [[0.26, 0.30, 0.35], [0.36, 0.32, 0.38], [0.25, 0.12, 0.29], [0.25, 0.32, 0.36], [0.09, 0.15, 0.22]],
        [[0.38, 0.32, 0.48], [0.22, 0.29, 0.32], [0.26, 0.15, 0.31], [0.02, 0.01, 0.13], [0.09, 0.03, 0.19]],
        [[0.22, 0.23, 0.39], [0.16, 0.10, 0.19], [0.29, 0.23, 0.32], [0.09, 0.06, 0.16], [0.28, 0.33, 0.39]],
        [[0.46, 0.28, 0.38], [0.15, 0.01, 0.17], [0.12, 0.08, 0.14], [0.39, 0.20, 0.29], [0.10, 0.09, 0.28]],
        [[0.02, 0.01, 0.09], [0.20, 0.12, 0.36], [0.20, 0.19, 0.34], [0.35, 0.25, 0.38], [0.19, 0.20, 0.29]],
    ];
    (0..5)
        .map(|k| WeightCase {
            case_id: format!("Case {k}"),
            weights: FACTORS
                .iter()
                .zip(crisp[k])
                .map(|(f, w)| (f.to_string(), w))
                .collect(),
            fuzzy: Some(
                FACTORS
                    .iter()
                    .zip(fuzzy[k])
                    .map(|(f, t)| (f.to_string(), t))
                    .collect(),
            ),
        })
        .collect()
}

/// Parse a `cases.json` document: a list of `{case_id, weights}` objects.
pub fn parse_cases(json: &str) -> Result<Vec<WeightCase>> {
    let cases: Vec<WeightCase> = serde_json::from_str(json).map_err(|e| Error::Parse {
        path: "cases.json".into(),
        line: e.line() as u64,
        reason: e.to_string(),
    })?;
    if cases.is_empty() {
        return Err(Error::validation("cases file lists no weight cases"));
    }
    Ok(cases)
}

/// Resolve a `--cases` argument: either the preset name or a JSON file path.
pub fn load_cases(spec: &str) -> Result<Vec<WeightCase>> {
    if spec == SODCT_PRESET {
        return Ok(sodct_preset_cases());
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_cases(&text).map_err(|e| match e {
        Error::Parse { line, reason, .. } => Error::Parse {
            path: spec.to_string(),
            line,
            reason,
        },
        other => other,
    })
}

/// Rerun WASPAS with the case's weights in place of the SWARA weights.
pub fn apply_weight_case(
    input: &WaspasInput,
    case: &WeightCase,
    mode: MatrixMode,
    tie_tolerance: f64,
) -> Result<RankingResult> {
    let weights = case.normalized_for(&input.criterion_ids())?;
    Ok(run_waspas(input, &weights, mode, tie_tolerance)?.ranking)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CasePair {
    pub first: String,
    pub second: String,
    /// `None` when either ranking has every alternative tied.
    pub spearman: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRange {
    pub alternative: String,
    pub min: usize,
    pub max: usize,
}

/// Rank matrix (alternatives × cases) with stability summaries.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub cases: Vec<String>,
    pub alternatives: Vec<String>,
    /// `ranks[i][k]`: rank of alternative `i` under case `k`.
    pub ranks: Vec<Vec<usize>>,
    /// Utility of alternative `i` under case `k`.
    pub utilities: Vec<Vec<f64>>,
    pub ranges: Vec<RankRange>,
    pub pairwise: Vec<CasePair>,
    /// Alternatives ranked first under every case.
    pub always_first: Vec<String>,
    /// Tie groups per case, in case order.
    pub ties: Vec<Vec<Vec<String>>>,
}

impl StabilityReport {
    pub fn assemble(case_ids: Vec<String>, rankings: &[RankingResult]) -> Result<Self> {
        let first = rankings
            .first()
            .ok_or_else(|| Error::validation("stability sweep needs at least one case"))?;
        let alternatives = first.ids();
        let m = alternatives.len();
        let ranks: Vec<Vec<usize>> = (0..m)
            .map(|i| rankings.iter().map(|r| r.scores[i].rank).collect())
            .collect();
        let utilities = (0..m)
            .map(|i| rankings.iter().map(|r| r.scores[i].k).collect())
            .collect();
        let ranges = alternatives
            .iter()
            .zip(&ranks)
            .map(|(a, row)| RankRange {
                alternative: a.clone(),
                min: *row.iter().min().expect("nonempty"),
                max: *row.iter().max().expect("nonempty"),
            })
            .collect();
        let mut pairwise = Vec::new();
        for x in 0..rankings.len() {
            for y in x + 1..rankings.len() {
                pairwise.push(CasePair {
                    first: case_ids[x].clone(),
                    second: case_ids[y].clone(),
                    spearman: spearman_rank_correlation(&rankings[x].ranks(), &rankings[y].ranks())
                        .ok(),
                });
            }
        }
        let always_first = alternatives
            .iter()
            .zip(&ranks)
            .filter(|(_, row)| row.iter().all(|&r| r == 1))
            .map(|(a, _)| a.clone())
            .collect();
        Ok(Self {
            cases: case_ids,
            alternatives,
            ranks,
            utilities,
            ranges,
            pairwise,
            always_first,
            ties: rankings.iter().map(|r| r.ties.clone()).collect(),
        })
    }
}

/// Rank the alternatives under every case and summarize stability.
pub fn stability_sweep(
    input: &WaspasInput,
    cases: &[WeightCase],
    mode: MatrixMode,
    tie_tolerance: f64,
) -> Result<StabilityReport> {
    if cases.is_empty() {
        return Err(Error::validation("stability sweep needs at least one case"));
    }
    let rankings = cases
        .iter()
        .map(|c| apply_weight_case(input, c, mode, tie_tolerance))
        .collect::<Result<Vec<_>>>()?;
    StabilityReport::assemble(cases.iter().map(|c| c.case_id.clone()).collect(), &rankings)
}

/// Spearman's rank correlation between two rank vectors.
///
/// Without ties this is `1 - 6Σd² / (n(n²-1))`. Tied ranks are replaced by
/// mid-ranks and the Pearson correlation of the mid-ranks is returned, which
/// is the standard tie correction and agrees with the closed form when no
/// ties are present.
pub fn spearman_rank_correlation(r1: &[usize], r2: &[usize]) -> Result<f64> {
    if r1.len() != r2.len() {
        return Err(Error::Dimension {
            op: "spearman_rank_correlation",
            expected: r1.len(),
            got: r2.len(),
        });
    }
    let n = r1.len();
    if n < 2 {
        return Err(Error::validation(
            "Spearman correlation needs at least two ranked items",
        ));
    }
    let x = mid_ranks(&r1.iter().map(|&r| r as f64).collect::<Vec<_>>());
    let y = mid_ranks(&r2.iter().map(|&r| r as f64).collect::<Vec<_>>());
    let has_ties = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        s.windows(2).any(|w| w[0] == w[1])
    };
    if !has_ties(&x) && !has_ties(&y) {
        let d2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        let n = n as f64;
        return Ok(1.0 - 6.0 * d2 / (n * (n * n - 1.0)));
    }
    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(&y) {
        sxy += (a - mean) * (b - mean);
        sxx += (a - mean) * (a - mean);
        syy += (b - mean) * (b - mean);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::degenerate(
            "spearman_rank_correlation",
            "a ranking has every item tied",
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}
