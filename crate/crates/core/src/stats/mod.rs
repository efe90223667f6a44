//! Questionnaire statistics: reliability, rank tests and moderated
//! regression over Likert-style survey data.

mod cronbach;
mod kruskal;
mod regression;

pub use cronbach::{cronbach_alpha, CronbachReport, ItemDiagnostics};
pub use kruskal::{kruskal_wallis, mean_ranks, KruskalWallis};
pub use regression::{
    correlation_matrix, moderated_regression, ols, pearson, split_by_strategy, ModelPreset,
    OlsFit, PresetForm, RegressionFit, RegressionSpec, StrategySplit, STRATEGY_THRESHOLD,
};

use crate::error::{Error, Result};

/// Respondents × items grid of scores with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemMatrix {
    pub respondents: Vec<String>,
    pub items: Vec<String>,
    /// `rows[r][i]`: score of respondent `r` on item `i`.
    pub rows: Vec<Vec<f64>>,
}

impl ItemMatrix {
    pub fn new(respondents: Vec<String>, items: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.len() != respondents.len() {
            return Err(Error::Dimension {
                op: "item_matrix",
                expected: respondents.len(),
                got: rows.len(),
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != items.len() {
                return Err(Error::validation(format!(
                    "respondent {:?} has {} scores, expected {}",
                    respondents[r],
                    row.len(),
                    items.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| !v.is_finite()) {
                return Err(Error::validation(format!(
                    "respondent {:?} has non-finite score {v}",
                    respondents[r]
                )));
            }
        }
        Ok(Self {
            respondents,
            items,
            rows,
        })
    }

    /// Build from anonymous rows; respondents and items are numbered from 1.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let k = rows.first().map_or(0, Vec::len);
        Self::new(
            (1..=rows.len()).map(|i| format!("R{i}")).collect(),
            (1..=k).map(|i| format!("I{i}")).collect(),
            rows,
        )
    }

    pub fn n_respondents(&self) -> usize {
        self.rows.len()
    }

    pub fn n_items(&self) -> usize {
        self.items.len()
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    pub fn column_by_name(&self, name: &str) -> Option<Vec<f64>> {
        self.items
            .iter()
            .position(|n| n == name)
            .map(|i| self.column(i))
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.n_items()).map(|i| self.column(i)).collect()
    }
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Sum of squared deviations from the mean.
pub(crate) fn sum_sq_dev(x: &[f64]) -> f64 {
    let m = mean(x);
    x.iter().map(|v| (v - m) * (v - m)).sum()
}
