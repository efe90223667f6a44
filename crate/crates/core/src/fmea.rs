//! Conventional FMEA scoring over the SODCT risk factors and the
//! side-by-side comparison with the WASPAS rankings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::round_half_up;
use crate::ranking::rank_descending;
use crate::sensitivity::spearman_rank_correlation;
use crate::waspas::RankingResult;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureMode {
    pub id: String,
    pub label: String,
}

impl FailureMode {
    pub fn new(id: &str, label: &str) -> Self {
        Self {
            id: id.to_string(),
            label: label.to_string(),
        }
    }
}

/// Severity, Occurrence, Detection, Cost, Time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    S,
    O,
    D,
    C,
    T,
}

impl Factor {
    pub const ALL: [Factor; 5] = [Factor::S, Factor::O, Factor::D, Factor::C, Factor::T];

    pub fn name(self) -> &'static str {
        match self {
            Factor::S => "Severity",
            Factor::O => "Occurrence",
            Factor::D => "Detection",
            Factor::C => "Cost",
            Factor::T => "Time",
        }
    }
}

impl FromStr for Factor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" => Ok(Factor::S),
            "O" => Ok(Factor::O),
            "D" => Ok(Factor::D),
            "C" => Ok(Factor::C),
            "T" => Ok(Factor::T),
            other => Err(Error::validation(format!(
                "unknown SODCT factor {other:?}; valid codes: S, O, D, C, T"
            ))),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One expert's 1-10 rating of one failure mode on one factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodctRating {
    pub expert_id: String,
    pub failure_mode_id: String,
    pub factor: Factor,
    pub value: u8,
}

impl SodctRating {
    pub fn new(expert: &str, failure_mode: &str, factor: Factor, value: u8) -> Self {
        Self {
            expert_id: expert.to_string(),
            failure_mode_id: failure_mode.to_string(),
            factor,
            value,
        }
    }
}

pub const MIN_RATING: u8 = 1;
pub const MAX_RATING: u8 = 10;

/// Risk priority number of one failure mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rpn {
    pub value: f64,
    /// `value` rounded half-up to two decimals.
    pub two_decimals: f64,
    pub rounded: u64,
}

impl Rpn {
    fn from_value(value: f64) -> Self {
        Self {
            value,
            two_decimals: round_half_up(value, 2),
            rounded: round_half_up(value, 0) as u64,
        }
    }
}

fn check_rating(r: &SodctRating) -> Result<()> {
    if !(MIN_RATING..=MAX_RATING).contains(&r.value) {
        return Err(Error::validation(format!(
            "SODCT rating ({}, {}, {}) = {} outside {MIN_RATING}..={MAX_RATING}",
            r.expert_id, r.failure_mode_id, r.factor, r.value
        )));
    }
    Ok(())
}

/// RPN of one failure mode: the product over the five factors of the mean
/// expert rating for that factor.
pub fn rpn_score(ratings: &[SodctRating]) -> Result<Rpn> {
    let mut per_factor: BTreeMap<Factor, Vec<f64>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for r in ratings {
        check_rating(r)?;
        if !seen.insert((r.expert_id.as_str(), r.failure_mode_id.as_str(), r.factor)) {
            return Err(Error::validation(format!(
                "duplicate SODCT rating for ({}, {}, {})",
                r.expert_id, r.failure_mode_id, r.factor
            )));
        }
        per_factor.entry(r.factor).or_default().push(r.value as f64);
    }
    let missing: Vec<String> = Factor::ALL
        .iter()
        .filter(|f| !per_factor.contains_key(f))
        .map(|f| f.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::validation(format!(
            "missing SODCT factor(s) {}",
            missing.join(", ")
        )));
    }
    let value = per_factor
        .values()
        .map(|v| v.iter().sum::<f64>() / v.len() as f64)
        .product();
    Ok(Rpn::from_value(value))
}

/// RPN for every failure mode in `failure_modes` order.
pub fn rpn_scores(ratings: &[SodctRating], failure_modes: &[String]) -> Result<Vec<Rpn>> {
    let known: BTreeSet<&str> = failure_modes.iter().map(String::as_str).collect();
    if let Some(r) = ratings
        .iter()
        .find(|r| !known.contains(r.failure_mode_id.as_str()))
    {
        return Err(Error::validation(format!(
            "SODCT rating references unknown failure mode {:?}",
            r.failure_mode_id
        )));
    }
    failure_modes
        .iter()
        .map(|fm| {
            let mine: Vec<SodctRating> = ratings
                .iter()
                .filter(|r| &r.failure_mode_id == fm)
                .cloned()
                .collect();
            rpn_score(&mine).map_err(|e| match e {
                Error::Validation(msg) => Error::Validation(format!("failure mode {fm:?}: {msg}")),
                other => other,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpnEntry {
    pub id: String,
    pub rpn: Rpn,
    pub rank: usize,
}

/// Failure modes ranked by descending RPN; exactly equal RPNs are tied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RpnRanking {
    pub scores: Vec<RpnEntry>,
    pub ties: Vec<Vec<String>>,
    /// Number of failure modes that share their rank with another one.
    pub tied_modes: usize,
}

impl RpnRanking {
    pub fn ranks(&self) -> Vec<usize> {
        self.scores.iter().map(|s| s.rank).collect()
    }
}

pub fn rank_by_rpn(ids: &[String], scores: &[Rpn]) -> Result<RpnRanking> {
    if ids.is_empty() || ids.len() != scores.len() {
        return Err(Error::Dimension {
            op: "rank_by_rpn",
            expected: ids.len(),
            got: scores.len(),
        });
    }
    let values: Vec<f64> = scores.iter().map(|r| r.value).collect();
    let ranked = rank_descending(&values, 0.0);
    let ties: Vec<Vec<String>> = ranked
        .ties
        .iter()
        .map(|g| g.iter().map(|&i| ids[i].clone()).collect())
        .collect();
    Ok(RpnRanking {
        scores: ids
            .iter()
            .zip(scores)
            .zip(&ranked.ranks)
            .map(|((id, rpn), &rank)| RpnEntry {
                id: id.clone(),
                rpn: *rpn,
                rank,
            })
            .collect(),
        tied_modes: ties.iter().map(Vec::len).sum(),
        ties,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rpn,
    FuzzyWaspas,
    ZWaspas,
}

impl Method {
    pub fn title(self) -> &'static str {
        match self {
            Method::Rpn => "Conventional FMEA",
            Method::FuzzyWaspas => "Fuzzy-WASPAS",
            Method::ZWaspas => "Z-WASPAS",
        }
    }

    pub fn score_label(self) -> &'static str {
        match self {
            Method::Rpn => "RPN",
            Method::FuzzyWaspas | Method::ZWaspas => "K_i",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rpn => "rpn",
            Method::FuzzyWaspas => "fuzzy-waspas",
            Method::ZWaspas => "z-waspas",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rpn" => Ok(Method::Rpn),
            "fuzzy-waspas" => Ok(Method::FuzzyWaspas),
            "z-waspas" => Ok(Method::ZWaspas),
            other => Err(Error::validation(format!(
                "unknown method {other:?}; expected rpn, fuzzy-waspas or z-waspas"
            ))),
        }
    }
}

/// Scores and ranks of one method, aligned to a list of failure-mode ids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodColumn {
    pub method: Method,
    pub ids: Vec<String>,
    pub scores: Vec<f64>,
    pub ranks: Vec<usize>,
}

impl MethodColumn {
    pub fn from_rpn(r: &RpnRanking) -> Self {
        Self {
            method: Method::Rpn,
            ids: r.scores.iter().map(|s| s.id.clone()).collect(),
            scores: r.scores.iter().map(|s| s.rpn.value).collect(),
            ranks: r.ranks(),
        }
    }

    pub fn from_waspas(method: Method, r: &RankingResult) -> Self {
        Self {
            method,
            ids: r.ids(),
            scores: r.utilities(),
            ranks: r.ranks(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodCell {
    pub score: f64,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub id: String,
    /// One cell per method, in `MethodComparison::methods` order.
    pub cells: Vec<MethodCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodAgreement {
    pub first: Method,
    pub second: Method,
    pub spearman: Option<f64>,
}

/// Per-failure-mode scores and ranks under each method, plus pairwise rank
/// agreement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodComparison {
    pub methods: Vec<Method>,
    pub rows: Vec<ComparisonRow>,
    pub agreement: Vec<MethodAgreement>,
}

impl MethodComparison {
    pub fn ranks(&self, method: Method) -> Option<Vec<usize>> {
        let k = self.methods.iter().position(|&m| m == method)?;
        Some(self.rows.iter().map(|r| r.cells[k].rank).collect())
    }

    pub fn spearman(&self, a: Method, b: Method) -> Option<f64> {
        self.agreement
            .iter()
            .find(|x| (x.first, x.second) == (a, b) || (x.first, x.second) == (b, a))
            .and_then(|x| x.spearman)
    }
}

/// Merge method columns into one table. Columns must cover the same
/// failure-mode ids; rows follow the first column's order.
pub fn compare_methods(columns: &[MethodColumn]) -> Result<MethodComparison> {
    let first = columns
        .first()
        .ok_or_else(|| Error::validation("no methods to compare"))?;
    let reference: BTreeSet<&String> = first.ids.iter().collect();
    for col in columns {
        let set: BTreeSet<&String> = col.ids.iter().collect();
        if set != reference || col.ids.len() != first.ids.len() {
            return Err(Error::validation(format!(
                "{} covers failure modes {:?}, expected {:?}",
                col.method, col.ids, first.ids
            )));
        }
        if col.scores.len() != col.ids.len() || col.ranks.len() != col.ids.len() {
            return Err(Error::Dimension {
                op: "compare_methods",
                expected: col.ids.len(),
                got: col.scores.len().min(col.ranks.len()),
            });
        }
    }
    let aligned: Vec<Vec<MethodCell>> = columns
        .iter()
        .map(|col| {
            let pos: BTreeMap<&String, usize> =
                col.ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
            first
                .ids
                .iter()
                .map(|id| {
                    let i = pos[id];
                    MethodCell {
                        score: col.scores[i],
                        rank: col.ranks[i],
                    }
                })
                .collect()
        })
        .collect();
    let rows = first
        .ids
        .iter()
        .enumerate()
        .map(|(i, id)| ComparisonRow {
            id: id.clone(),
            cells: aligned.iter().map(|c| c[i].clone()).collect(),
        })
        .collect();
    let ranks_of = |k: usize| -> Vec<usize> { aligned[k].iter().map(|c| c.rank).collect() };
    let mut agreement = Vec::new();
    for x in 0..columns.len() {
        for y in x + 1..columns.len() {
            agreement.push(MethodAgreement {
                first: columns[x].method,
                second: columns[y].method,
                spearman: spearman_rank_correlation(&ranks_of(x), &ranks_of(y)).ok(),
            });
        }
    }
    Ok(MethodComparison {
        methods: columns.iter().map(|c| c.method).collect(),
        rows,
        agreement,
    })
}
