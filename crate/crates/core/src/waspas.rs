//! Z-WASPAS alternative ranking and its fuzzy-WASPAS baseline.
//!
//! Pipeline: linguistic ratings -> TFN decision matrix -> column
//! normalization -> weighted sum (WSM) and weighted product (WPM) scores ->
//! centroids -> utility `K_i = λ·Q̄_i + (1-λ)·P̄_i` with
//! `λ = ΣP̄ / (ΣQ̄ + ΣP̄)` -> ranking by descending `K_i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{rating_term_to_tfn, RatingTerm, ReliabilityTerm, Tfn};
use crate::ranking::rank_descending;
use crate::swara::CriterionWeights;

/// Default tolerance under which two utilities count as tied.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Larger is preferred.
    #[default]
    Beneficial,
    /// Smaller is preferred.
    NonBeneficial,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "beneficial" | "benefit" | "max" => Ok(Direction::Beneficial),
            "non-beneficial" | "nonbeneficial" | "cost" | "min" => Ok(Direction::NonBeneficial),
            other => Err(Error::validation(format!(
                "unknown criterion direction {other:?}; expected beneficial or non-beneficial"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Beneficial => "beneficial",
            Direction::NonBeneficial => "non-beneficial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: String,
    pub name: String,
    pub direction: Direction,
}

impl Criterion {
    pub fn beneficial(id: &str) -> Self {
        Self {
            id: id.to_string(),
            name: id.to_string(),
            direction: Direction::Beneficial,
        }
    }
}

/// One expert's rating of one alternative on one criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatingJudgment {
    pub expert_id: String,
    pub alternative_id: String,
    pub criterion_id: String,
    pub rating: RatingTerm,
    /// Required for Z-WASPAS, ignored by the fuzzy baseline.
    pub reliability: Option<ReliabilityTerm>,
}

impl RatingJudgment {
    pub fn new(
        expert: &str,
        alternative: &str,
        criterion: &str,
        rating: RatingTerm,
        reliability: Option<ReliabilityTerm>,
    ) -> Self {
        Self {
            expert_id: expert.to_string(),
            alternative_id: alternative.to_string(),
            criterion_id: criterion.to_string(),
            rating,
            reliability,
        }
    }
}

/// How rating cells become TFNs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixMode {
    /// Z-number conversion of (rating, reliability).
    Z,
    /// Raw rating TFN; reliability is ignored.
    Fuzzy,
}

/// An `m × n` grid of TFNs (alternatives × criteria).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionMatrix {
    pub alternatives: Vec<String>,
    pub criteria: Vec<String>,
    pub directions: Vec<Direction>,
    /// Row-major: `cells[i][j]` is alternative `i` on criterion `j`.
    pub cells: Vec<Vec<Tfn>>,
}

impl DecisionMatrix {
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<Criterion>,
        cells: Vec<Vec<Tfn>>,
    ) -> Result<Self> {
        if cells.len() != alternatives.len() {
            return Err(Error::Dimension {
                op: "decision_matrix",
                expected: alternatives.len(),
                got: cells.len(),
            });
        }
        if let Some(row) = cells.iter().find(|r| r.len() != criteria.len()) {
            return Err(Error::Dimension {
                op: "decision_matrix",
                expected: criteria.len(),
                got: row.len(),
            });
        }
        Ok(Self {
            alternatives,
            directions: criteria.iter().map(|c| c.direction).collect(),
            criteria: criteria.into_iter().map(|c| c.id).collect(),
            cells,
        })
    }

    pub fn rows(&self) -> usize {
        self.alternatives.len()
    }

    pub fn cols(&self) -> usize {
        self.criteria.len()
    }

    fn column(&self, j: usize) -> impl Iterator<Item = &Tfn> + '_ {
        self.cells.iter().map(move |row| &row[j])
    }
}

/// Everything needed to score a set of alternatives.
#[derive(Debug, Clone, PartialEq)]
pub struct WaspasInput {
    pub alternatives: Vec<String>,
    pub criteria: Vec<Criterion>,
    pub judgments: Vec<RatingJudgment>,
}

impl WaspasInput {
    pub fn criterion_ids(&self) -> Vec<String> {
        self.criteria.iter().map(|c| c.id.clone()).collect()
    }
}

/// Average the experts' cell TFNs into a decision matrix.
///
/// Every expert that appears in `judgments` must rate every
/// (alternative, criterion) pair exactly once.
pub fn build_decision_matrix(
    judgments: &[RatingJudgment],
    alternatives: &[String],
    criteria: &[Criterion],
    mode: MatrixMode,
) -> Result<DecisionMatrix> {
    if alternatives.is_empty() || criteria.is_empty() {
        return Err(Error::validation(
            "decision matrix needs at least one alternative and one criterion",
        ));
    }
    if judgments.is_empty() {
        return Err(Error::validation("no rating judgments"));
    }
    let alt_index: BTreeMap<&str, usize> = alternatives
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let crit_index: BTreeMap<&str, usize> = criteria
        .iter()
        .enumerate()
        .map(|(j, c)| (c.id.as_str(), j))
        .collect();

    let mut seen: BTreeMap<(&str, usize, usize), Tfn> = BTreeMap::new();
    for r in judgments {
        let i = *alt_index.get(r.alternative_id.as_str()).ok_or_else(|| {
            Error::validation(format!(
                "rating by {:?} references unknown alternative {:?}",
                r.expert_id, r.alternative_id
            ))
        })?;
        let j = *crit_index.get(r.criterion_id.as_str()).ok_or_else(|| {
            Error::validation(format!(
                "rating by {:?} references unknown criterion {:?}",
                r.expert_id, r.criterion_id
            ))
        })?;
        let tfn = match mode {
            MatrixMode::Fuzzy => r.rating.tfn(),
            MatrixMode::Z => {
                let rel = r.reliability.ok_or_else(|| {
                    Error::validation(format!(
                        "rating ({}, {}, {}) has no reliability term",
                        r.expert_id, r.alternative_id, r.criterion_id
                    ))
                })?;
                rating_term_to_tfn(r.rating, rel)
            }
        };
        if seen.insert((r.expert_id.as_str(), i, j), tfn).is_some() {
            return Err(Error::validation(format!(
                "duplicate rating for (expert, alternative, criterion) = ({}, {}, {})",
                r.expert_id, r.alternative_id, r.criterion_id
            )));
        }
    }

    let experts: BTreeSet<&str> = seen.keys().map(|k| k.0).collect();
    let mut missing = Vec::new();
    for e in &experts {
        for (i, alt) in alternatives.iter().enumerate() {
            for (j, crit) in criteria.iter().enumerate() {
                if !seen.contains_key(&(*e, i, j)) {
                    missing.push((e.to_string(), alt.clone(), crit.id.clone()));
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteGrid(missing));
    }

    let cells = (0..alternatives.len())
        .map(|i| {
            (0..criteria.len())
                .map(|j| {
                    let per_expert: Vec<Tfn> = experts.iter().map(|e| seen[&(*e, i, j)]).collect();
                    Tfn::mean(&per_expert).expect("at least one expert")
                })
                .collect()
        })
        .collect();
    DecisionMatrix::new(alternatives.to_vec(), criteria.to_vec(), cells)
}

/// Column normalization into `[0, 1]`.
///
/// Beneficial columns are divided by the largest upper bound in the column.
/// Non-beneficial columns use `min_i a_ij / h_ij` with reversed components so
/// each result is still a valid TFN.
pub fn normalize_matrix(matrix: &DecisionMatrix) -> Result<DecisionMatrix> {
    let mut cells = matrix.cells.clone();
    for j in 0..matrix.cols() {
        if let Some(neg) = matrix.column(j).find(|t| !t.is_nonnegative()) {
            return Err(Error::degenerate(
                "normalize_matrix",
                format!("column {:?} has negative cell {neg}", matrix.criteria[j]),
            ));
        }
        match matrix.directions[j] {
            Direction::Beneficial => {
                let max_c = matrix.column(j).map(Tfn::c).fold(0.0, f64::max);
                if max_c <= 0.0 {
                    return Err(Error::degenerate(
                        "normalize_matrix",
                        format!("beneficial column {:?} is all zero", matrix.criteria[j]),
                    ));
                }
                for row in cells.iter_mut() {
                    let t = row[j];
                    row[j] = Tfn::from_ordered(t.a() / max_c, t.b() / max_c, t.c() / max_c);
                }
            }
            Direction::NonBeneficial => {
                let min_a = matrix.column(j).map(Tfn::a).fold(f64::INFINITY, f64::min);
                if min_a <= 0.0 {
                    return Err(Error::degenerate(
                        "normalize_matrix",
                        format!(
                            "non-beneficial column {:?} has a zero lower bound",
                            matrix.criteria[j]
                        ),
                    ));
                }
                for row in cells.iter_mut() {
                    let t = row[j];
                    row[j] = Tfn::from_ordered(min_a / t.c(), min_a / t.b(), min_a / t.a());
                }
            }
        }
    }
    Ok(DecisionMatrix {
        cells,
        ..matrix.clone()
    })
}

fn check_weights(op: &'static str, matrix: &DecisionMatrix, weights: &[f64]) -> Result<()> {
    if weights.len() != matrix.cols() {
        return Err(Error::Dimension {
            op,
            expected: matrix.cols(),
            got: weights.len(),
        });
    }
    if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
        return Err(Error::domain(op, format!("crisp weight {w} outside [0, 1]")));
    }
    Ok(())
}

/// Weighted sum `Q_i = Σ_j w_j · ĥ_ij` with crisp weights.
pub fn wsm_scores(normalized: &DecisionMatrix, weights: &[f64]) -> Result<Vec<Tfn>> {
    check_weights("wsm_scores", normalized, weights)?;
    normalized
        .cells
        .iter()
        .map(|row| {
            row.iter()
                .zip(weights)
                .try_fold(Tfn::ZERO, |acc, (cell, &w)| Ok(acc + cell.scale(w)?))
        })
        .collect()
}

/// Weighted product `P_i = Π_j ĥ_ij ^ w_j` with crisp weights.
pub fn wpm_scores(normalized: &DecisionMatrix, weights: &[f64]) -> Result<Vec<Tfn>> {
    check_weights("wpm_scores", normalized, weights)?;
    normalized
        .cells
        .iter()
        .map(|row| {
            row.iter()
                .zip(weights)
                .try_fold(Tfn::ONE, |acc, (cell, &w)| acc.mul(cell.pow(w)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlternativeScore {
    pub id: String,
    pub q: Tfn,
    pub p: Tfn,
    pub q_bar: f64,
    pub p_bar: f64,
    pub k: f64,
    pub rank: usize,
}

/// Scores and ranks for every alternative, in input order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingResult {
    pub lambda: f64,
    pub scores: Vec<AlternativeScore>,
    /// Groups of alternative ids whose utilities are tied.
    pub ties: Vec<Vec<String>>,
}

impl RankingResult {
    pub fn ranks(&self) -> Vec<usize> {
        self.scores.iter().map(|s| s.rank).collect()
    }

    pub fn utilities(&self) -> Vec<f64> {
        self.scores.iter().map(|s| s.k).collect()
    }

    pub fn ids(&self) -> Vec<String> {
        self.scores.iter().map(|s| s.id.clone()).collect()
    }

    /// Alternatives holding rank 1.
    pub fn leaders(&self) -> Vec<&str> {
        self.scores
            .iter()
            .filter(|s| s.rank == 1)
            .map(|s| s.id.as_str())
            .collect()
    }
}

/// Defuzzify WSM/WPM scores, blend them with `λ` and rank.
pub fn utility_ranking(
    ids: &[String],
    q: &[Tfn],
    p: &[Tfn],
    tie_tolerance: f64,
) -> Result<RankingResult> {
    if q.is_empty() || q.len() != p.len() || q.len() != ids.len() {
        return Err(Error::Dimension {
            op: "utility_ranking",
            expected: ids.len(),
            got: if q.len() != ids.len() { q.len() } else { p.len() },
        });
    }
    let q_bar: Vec<f64> = q.iter().map(Tfn::centroid).collect();
    let p_bar: Vec<f64> = p.iter().map(Tfn::centroid).collect();
    let sum_q: f64 = q_bar.iter().sum();
    let sum_p: f64 = p_bar.iter().sum();
    let denom = sum_q + sum_p;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::degenerate(
            "utility_ranking",
            "sum of defuzzified WSM and WPM scores is zero",
        ));
    }
    let lambda = sum_p / denom;
    let k: Vec<f64> = q_bar
        .iter()
        .zip(&p_bar)
        .map(|(&qb, &pb)| {
            let blended = pb + lambda * (qb - pb);
            blended.clamp(qb.min(pb), qb.max(pb))
        })
        .collect();
    let ranked = rank_descending(&k, tie_tolerance);
    let scores = (0..ids.len())
        .map(|i| AlternativeScore {
            id: ids[i].clone(),
            q: q[i],
            p: p[i],
            q_bar: q_bar[i],
            p_bar: p_bar[i],
            k: k[i],
            rank: ranked.ranks[i],
        })
        .collect();
    let ties = ranked
        .ties
        .iter()
        .map(|g| g.iter().map(|&i| ids[i].clone()).collect())
        .collect();
    Ok(RankingResult {
        lambda,
        scores,
        ties,
    })
}

/// Intermediate products of one WASPAS run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WaspasRun {
    pub matrix: DecisionMatrix,
    pub normalized: DecisionMatrix,
    pub weights: Vec<f64>,
    pub ranking: RankingResult,
}

/// Run the whole pipeline with crisp `weights` aligned to `input.criteria`.
pub fn run_waspas(
    input: &WaspasInput,
    weights: &[f64],
    mode: MatrixMode,
    tie_tolerance: f64,
) -> Result<WaspasRun> {
    let matrix = build_decision_matrix(
        &input.judgments,
        &input.alternatives,
        &input.criteria,
        mode,
    )?;
    let normalized = normalize_matrix(&matrix)?;
    let q = wsm_scores(&normalized, weights)?;
    let p = wpm_scores(&normalized, weights)?;
    let ranking = utility_ranking(&matrix.alternatives, &q, &p, tie_tolerance)?;
    Ok(WaspasRun {
        matrix,
        normalized,
        weights: weights.to_vec(),
        ranking,
    })
}

/// Z-WASPAS with weights from a SWARA run.
pub fn run_zwaspas(input: &WaspasInput, weights: &CriterionWeights) -> Result<RankingResult> {
    let w = weights.crisp_in_order(&input.criterion_ids())?;
    Ok(run_waspas(input, &w, MatrixMode::Z, DEFAULT_TIE_TOLERANCE)?.ranking)
}

/// Fuzzy-WASPAS baseline (reliability ignored) with weights from a SWARA run.
pub fn run_fuzzy_waspas(input: &WaspasInput, weights: &CriterionWeights) -> Result<RankingResult> {
    let w = weights.crisp_in_order(&input.criterion_ids())?;
    Ok(run_waspas(input, &w, MatrixMode::Fuzzy, DEFAULT_TIE_TOLERANCE)?.ranking)
}
