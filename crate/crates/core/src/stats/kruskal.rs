use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::ItemMatrix;
use crate::error::{Error, Result};
use crate::ranking::mid_ranks;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KruskalWallis {
    pub h: f64,
    pub df: usize,
    /// Upper-tail chi-square approximation.
    pub p: f64,
}

/// Kruskal-Wallis H over independent samples, with the tie correction
/// `H / (1 - Σ(t³ - t) / (N³ - N))`.
pub fn kruskal_wallis(groups: &[Vec<f64>]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(Error::validation(format!(
            "Kruskal-Wallis needs at least 2 groups, got {}",
            groups.len()
        )));
    }
    if let Some(i) = groups.iter().position(Vec::is_empty) {
        return Err(Error::validation(format!("group {i} is empty")));
    }
    let pooled: Vec<f64> = groups.iter().flatten().copied().collect();
    if let Some(v) = pooled.iter().find(|v| !v.is_finite()) {
        return Err(Error::validation(format!("non-finite observation {v}")));
    }
    let n = pooled.len() as f64;
    let ranks = mid_ranks(&pooled);

    let mut offset = 0;
    let mut sum_term = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum_term += r * r / g.len() as f64;
        offset += g.len();
    }
    let h_raw = 12.0 / (n * (n + 1.0)) * sum_term - 3.0 * (n + 1.0);

    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_sum = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_sum += t * t * t - t;
        i = j;
    }
    let correction = 1.0 - tie_sum / (n * n * n - n);
    // all observations equal: no between-group signal at all
    let h = if correction <= 0.0 {
        0.0
    } else {
        (h_raw / correction).max(0.0)
    };

    let df = groups.len() - 1;
    let chi = ChiSquared::new(df as f64).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(KruskalWallis {
        h,
        df,
        p: chi.sf(h),
    })
}

/// Average within-respondent rank of each item (mid-ranks for ties, rank 1
/// = lowest score).
pub fn mean_ranks(items: &ItemMatrix) -> Result<Vec<f64>> {
    if items.n_respondents() == 0 || items.n_items() == 0 {
        return Err(Error::validation("mean ranks need a nonempty item matrix"));
    }
    let mut totals = vec![0.0; items.n_items()];
    for row in &items.rows {
        for (t, r) in totals.iter_mut().zip(mid_ranks(row)) {
            *t += r;
        }
    }
    let n = items.n_respondents() as f64;
    Ok(totals.into_iter().map(|t| t / n).collect())
}
