use serde::Serialize;

use super::regression::pearson;
use super::{sum_sq_dev, ItemMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ItemDiagnostics {
    pub item: String,
    /// Alpha of the scale with this item removed; `None` when fewer than two
    /// items would remain or the reduced scale has zero variance.
    pub alpha_if_deleted: Option<f64>,
    /// Correlation of the item with the sum of the other items; `None` when
    /// either side has zero variance.
    pub item_total_correlation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CronbachReport {
    pub alpha: f64,
    pub items: Vec<ItemDiagnostics>,
}

fn alpha_of(columns: &[Vec<f64>]) -> Option<f64> {
    let k = columns.len();
    if k < 2 {
        return None;
    }
    let n = columns[0].len();
    let totals: Vec<f64> = (0..n).map(|r| columns.iter().map(|c| c[r]).sum()).collect();
    // the (n - 1) divisors of the variances cancel in the ratio
    let total_var = sum_sq_dev(&totals);
    if total_var == 0.0 {
        return None;
    }
    let item_var: f64 = columns.iter().map(|c| sum_sq_dev(c)).sum();
    let k = k as f64;
    Some(k / (k - 1.0) * (1.0 - item_var / total_var))
}

/// Cronbach's alpha `k/(k-1) · (1 - Σσ²_i / σ²_total)` with per-item
/// diagnostics. Negative values are reported as computed.
pub fn cronbach_alpha(items: &ItemMatrix) -> Result<CronbachReport> {
    if items.n_items() < 2 || items.n_respondents() < 2 {
        return Err(Error::validation(format!(
            "Cronbach's alpha needs at least 2 items and 2 respondents, got {} × {}",
            items.n_respondents(),
            items.n_items()
        )));
    }
    let columns = items.columns();
    let alpha = alpha_of(&columns).ok_or_else(|| {
        Error::degenerate("cronbach_alpha", "total score has zero variance; alpha is undefined")
    })?;
    let diagnostics = (0..columns.len())
        .map(|i| {
            let rest: Vec<Vec<f64>> = columns
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, c)| c.clone())
                .collect();
            let rest_total: Vec<f64> = (0..items.n_respondents())
                .map(|r| rest.iter().map(|c| c[r]).sum())
                .collect();
            ItemDiagnostics {
                item: items.items[i].clone(),
                alpha_if_deleted: alpha_of(&rest),
                item_total_correlation: pearson(&columns[i], &rest_total),
            }
        })
        .collect();
    Ok(CronbachReport {
        alpha,
        items: diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(rows: &[&[f64]]) -> ItemMatrix {
        ItemMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn duplicated_columns_give_one() {
        let m = matrix(&[&[1.0, 1.0, 1.0], &[3.0, 3.0, 3.0], &[4.0, 4.0, 4.0], &[2.0, 2.0, 2.0]]);
        let r = cronbach_alpha(&m).unwrap();
        assert_eq!(r.alpha, 1.0);
        for d in &r.items {
            assert_eq!(d.alpha_if_deleted, Some(1.0));
            assert!((d.item_total_correlation.unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn anti_correlated_items_go_negative() {
        // var(x) = 1, var(y) = 4, var(x + y) = 1: alpha = 2 * (1 - 5) = -8
        let m = matrix(&[&[1.0, 6.0], &[2.0, 4.0], &[3.0, 2.0]]);
        let r = cronbach_alpha(&m).unwrap();
        assert!((r.alpha + 8.0).abs() < 1e-12);
        assert_eq!(r.items[0].alpha_if_deleted, None);
        assert!((r.items[0].item_total_correlation.unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn undefined_when_total_is_constant() {
        let m = matrix(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert_eq!(cronbach_alpha(&m).unwrap_err().code(), "compute.degenerate");
        assert!(cronbach_alpha(&matrix(&[&[1.0], &[2.0]])).is_err());
    }

    #[test]
    fn textbook_value() {
        // items 1..3 over 5 respondents, alpha by hand: k=3,
        // item variances 2.5, 1.0, 1.3; total variance 13.3
        let m = matrix(&[
            &[1.0, 2.0, 2.0],
            &[2.0, 2.0, 3.0],
            &[3.0, 3.0, 3.0],
            &[4.0, 4.0, 4.0],
            &[5.0, 4.0, 5.0],
        ]);
        let r = cronbach_alpha(&m).unwrap();
        let expected = 1.5 * (1.0 - (2.5 + 1.0 + 1.3) / 13.3);
        assert!((r.alpha - expected).abs() < 1e-12, "{} vs {expected}", r.alpha);
        assert_eq!(r.items.len(), 3);
    }
}
