//! Z-SWARA criterion weighting.
//!
//! Experts rank the criteria, then qualify each criterion against the one
//! ranked just above it with an (importance, reliability) pair of linguistic
//! terms. The pairs become TFNs through the Z-number conversion, feed a
//! division recurrence, and are normalized into fuzzy and crisp weights.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{weighting_term_to_tfn, EiMode, ImportanceTerm, ReliabilityTerm, Tfn};

/// One expert's judgment about one criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionJudgment {
    pub expert_id: String,
    pub criterion_id: String,
    pub rank_position: u32,
    /// Absent for the expert's top-ranked criterion.
    pub importance: Option<ImportanceTerm>,
    /// Absent for the expert's top-ranked criterion.
    pub reliability: Option<ReliabilityTerm>,
}

impl CriterionJudgment {
    pub fn top(expert: &str, criterion: &str) -> Self {
        Self {
            expert_id: expert.to_string(),
            criterion_id: criterion.to_string(),
            rank_position: 1,
            importance: None,
            reliability: None,
        }
    }

    pub fn ranked(
        expert: &str,
        criterion: &str,
        rank_position: u32,
        importance: ImportanceTerm,
        reliability: ReliabilityTerm,
    ) -> Self {
        Self {
            expert_id: expert.to_string(),
            criterion_id: criterion.to_string(),
            rank_position,
            importance: Some(importance),
            reliability: Some(reliability),
        }
    }
}

/// Form of the coefficient recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Recurrence {
    /// `k_j = z_j + 1`, `q_j = q_{j-1} / k_j`. Weights decrease along the
    /// ranking.
    #[default]
    Standard,
    /// `q_j = q_{j-1} / z_j` with no `+ 1`. Because every importance term
    /// below EI is smaller than one, this makes lower-ranked criteria heavier.
    Literal,
}

/// Criterion weights in ranked order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionWeights {
    pub criteria: Vec<String>,
    pub fuzzy_q: Vec<Tfn>,
    pub fuzzy_w: Vec<Tfn>,
    pub crisp_w: Vec<f64>,
}

impl CriterionWeights {
    /// Uniform crisp weights over `criteria`, for use where no SWARA run is
    /// available.
    pub fn uniform(criteria: &[String]) -> Result<Self> {
        let q = vec![Tfn::ONE; criteria.len()];
        normalize_weights(criteria, &q)
    }

    pub fn crisp(&self, criterion: &str) -> Option<f64> {
        self.criteria
            .iter()
            .position(|c| c == criterion)
            .map(|i| self.crisp_w[i])
    }

    /// Crisp weights rearranged to follow `order`.
    pub fn crisp_in_order(&self, order: &[String]) -> Result<Vec<f64>> {
        if order.len() != self.criteria.len() {
            return Err(Error::Dimension {
                op: "crisp_in_order",
                expected: self.criteria.len(),
                got: order.len(),
            });
        }
        order
            .iter()
            .map(|c| {
                self.crisp(c)
                    .ok_or_else(|| Error::validation(format!("no weight for criterion {c:?}")))
            })
            .collect()
    }
}

/// Everything a Z-SWARA run produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwaraOutcome {
    /// Aggregated comparative-importance TFN per criterion below the top one
    /// (aligned with `weights.criteria[1..]`).
    pub comparative: Vec<Tfn>,
    pub weights: CriterionWeights,
}

fn by_expert(judgments: &[CriterionJudgment]) -> BTreeMap<&str, Vec<&CriterionJudgment>> {
    let mut map: BTreeMap<&str, Vec<&CriterionJudgment>> = BTreeMap::new();
    for j in judgments {
        map.entry(j.expert_id.as_str()).or_default().push(j);
    }
    map
}

/// Check the per-expert invariants: ranks form a permutation of `1..=n`,
/// only the rank-1 criterion lacks terms, and every expert covers the same
/// criterion set.
pub fn validate_judgments(judgments: &[CriterionJudgment]) -> Result<()> {
    if judgments.is_empty() {
        return Err(Error::validation("no weighting judgments"));
    }
    let experts = by_expert(judgments);
    let mut reference: Option<(&str, BTreeSet<&str>)> = None;
    for (expert, items) in &experts {
        let set: BTreeSet<&str> = items.iter().map(|j| j.criterion_id.as_str()).collect();
        if set.len() != items.len() {
            return Err(Error::validation(format!(
                "expert {expert:?} judges some criterion more than once"
            )));
        }
        let mut ranks: Vec<u32> = items.iter().map(|j| j.rank_position).collect();
        ranks.sort_unstable();
        if ranks.iter().enumerate().any(|(i, &r)| r as usize != i + 1) {
            return Err(Error::validation(format!(
                "expert {expert:?} rank positions {ranks:?} are not a permutation of 1..={}",
                items.len()
            )));
        }
        for j in items {
            let has_terms = (j.importance.is_some(), j.reliability.is_some());
            match (j.rank_position, has_terms) {
                (1, (false, false)) => {}
                (1, _) => {
                    return Err(Error::validation(format!(
                        "expert {expert:?}: top-ranked criterion {:?} must not carry importance/reliability terms",
                        j.criterion_id
                    )))
                }
                (_, (true, true)) => {}
                _ => {
                    return Err(Error::validation(format!(
                        "expert {expert:?}: criterion {:?} at rank {} needs both importance and reliability terms",
                        j.criterion_id, j.rank_position
                    )))
                }
            }
        }
        match &reference {
            None => reference = Some((expert, set)),
            Some((ref_expert, ref_set)) if *ref_set != set => {
                let missing: Vec<&&str> = ref_set.difference(&set).collect();
                let extra: Vec<&&str> = set.difference(ref_set).collect();
                return Err(Error::validation(format!(
                    "expert {expert:?} criterion set differs from expert {ref_expert:?}: missing {missing:?}, extra {extra:?}"
                )));
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Order criteria by ascending mean rank position across experts; equal means
/// are broken by criterion id.
pub fn aggregate_rankings(judgments: &[CriterionJudgment]) -> Result<Vec<String>> {
    validate_judgments(judgments)?;
    let n_experts = by_expert(judgments).len() as f64;
    let mut totals: BTreeMap<&str, f64> = BTreeMap::new();
    for j in judgments {
        *totals.entry(j.criterion_id.as_str()).or_default() += j.rank_position as f64;
    }
    let mut order: Vec<(&str, f64)> = totals
        .into_iter()
        .map(|(c, total)| (c, total / n_experts))
        .collect();
    // BTreeMap iteration is already sorted by id, and the sort is stable.
    order.sort_by(|x, y| x.1.total_cmp(&y.1));
    Ok(order.into_iter().map(|(c, _)| c.to_string()).collect())
}

/// Aggregated comparative-importance TFN for every criterion of `order`
/// except the first.
///
/// Each expert's (importance, reliability) pair is converted and the experts'
/// TFNs are averaged componentwise. An expert whose own top-ranked criterion
/// lands below the aggregated top position contributes `(1, 1, 1)` (equal
/// importance) for it.
pub fn comparative_importance(
    judgments: &[CriterionJudgment],
    order: &[String],
    ei_mode: EiMode,
) -> Result<Vec<Tfn>> {
    let experts = by_expert(judgments);
    order
        .iter()
        .skip(1)
        .map(|criterion| {
            let per_expert = experts
                .iter()
                .map(|(expert, items)| {
                    let j = items
                        .iter()
                        .find(|j| &j.criterion_id == criterion)
                        .ok_or_else(|| {
                            Error::validation(format!(
                                "expert {expert:?} has no judgment for criterion {criterion:?}"
                            ))
                        })?;
                    match (j.importance, j.reliability) {
                        (Some(i), Some(r)) => Ok(weighting_term_to_tfn(i, r, ei_mode)),
                        _ if j.rank_position == 1 => Ok(Tfn::ONE),
                        _ => Err(Error::validation(format!(
                            "expert {expert:?} has incomplete terms for criterion {criterion:?}"
                        ))),
                    }
                })
                .collect::<Result<Vec<Tfn>>>()?;
            Tfn::mean(&per_expert).ok_or_else(|| Error::validation("no experts"))
        })
        .collect()
}

/// Fuzzy weight coefficients `q_1 = (1,1,1)`, `q_j = q_{j-1} / k_j`.
pub fn swara_coefficients(z_terms: &[Tfn], recurrence: Recurrence) -> Result<Vec<Tfn>> {
    let mut q = Vec::with_capacity(z_terms.len() + 1);
    q.push(Tfn::ONE);
    for z in z_terms {
        let divisor = match recurrence {
            Recurrence::Standard => *z + Tfn::ONE,
            Recurrence::Literal => *z,
        };
        let prev = *q.last().expect("q is never empty");
        q.push(prev.div(divisor)?);
    }
    Ok(q)
}

/// Normalize coefficients into fuzzy weights `q_j / Σq` and crisp weights
/// (centroids rescaled to sum to one).
pub fn normalize_weights(criteria: &[String], q: &[Tfn]) -> Result<CriterionWeights> {
    if q.is_empty() {
        return Err(Error::degenerate("normalize_weights", "no coefficients"));
    }
    if criteria.len() != q.len() {
        return Err(Error::Dimension {
            op: "normalize_weights",
            expected: criteria.len(),
            got: q.len(),
        });
    }
    if let Some(neg) = q.iter().find(|t| !t.is_nonnegative()) {
        return Err(Error::domain(
            "normalize_weights",
            format!("negative coefficient {neg}"),
        ));
    }
    let total: Tfn = q.iter().copied().sum();
    if total.a() <= 0.0 {
        return Err(Error::degenerate(
            "normalize_weights",
            "coefficient sum has a zero lower bound",
        ));
    }
    let fuzzy_w = q
        .iter()
        .map(|t| t.div(total))
        .collect::<Result<Vec<_>>>()?;
    let centroids: Vec<f64> = fuzzy_w.iter().map(Tfn::centroid).collect();
    let sum: f64 = centroids.iter().sum();
    if sum <= 0.0 {
        return Err(Error::degenerate("normalize_weights", "all weights are zero"));
    }
    let crisp_w = centroids.iter().map(|c| c / sum).collect();
    Ok(CriterionWeights {
        criteria: criteria.to_vec(),
        fuzzy_q: q.to_vec(),
        fuzzy_w,
        crisp_w,
    })
}

/// Options for [`derive_weights`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwaraOptions {
    pub recurrence: Recurrence,
    pub ei_mode: EiMode,
}

/// Full Z-SWARA: aggregate rankings, convert judgments, run the recurrence
/// and normalize.
pub fn derive_weights(
    judgments: &[CriterionJudgment],
    options: SwaraOptions,
) -> Result<SwaraOutcome> {
    let order = aggregate_rankings(judgments)?;
    let comparative = comparative_importance(judgments, &order, options.ei_mode)?;
    let q = swara_coefficients(&comparative, options.recurrence)?;
    let weights = normalize_weights(&order, &q)?;
    Ok(SwaraOutcome {
        comparative,
        weights,
    })
}
