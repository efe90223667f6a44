use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{mean, sum_sq_dev, ItemMatrix};
use crate::error::{Error, Result};

/// Strategy scores below this value count as cost leadership, the rest as
/// differentiation.
pub const STRATEGY_THRESHOLD: f64 = 3.0;

const RANK_TOLERANCE: f64 = 1e-10;

/// Pearson correlation; `None` if either series has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx = sum_sq_dev(x);
    let syy = sum_sq_dev(y);
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Pairwise Pearson correlations of the named columns of `data`.
pub fn correlation_matrix(data: &ItemMatrix, columns: &[String]) -> Result<Vec<Vec<Option<f64>>>> {
    let series = columns
        .iter()
        .map(|c| {
            data.column_by_name(c)
                .ok_or_else(|| Error::validation(format!("unknown variable {c:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(series
        .iter()
        .map(|x| series.iter().map(|y| pearson(x, y)).collect())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OlsFit {
    pub columns: Vec<String>,
    pub beta: Vec<f64>,
    pub r_squared: f64,
    pub n: usize,
}

/// Ordinary least squares with an intercept prepended to `predictors`.
///
/// A rank-deficient design is rejected with the first column that is a linear
/// combination of the columns before it.
pub fn ols(predictors: &[(String, Vec<f64>)], y: &[f64]) -> Result<OlsFit> {
    let n = y.len();
    let p = predictors.len() + 1;
    if let Some((name, col)) = predictors.iter().find(|(_, c)| c.len() != n) {
        return Err(Error::validation(format!(
            "column {name:?} has {} observations, expected {n}",
            col.len()
        )));
    }
    if n < p + 1 {
        return Err(Error::validation(format!(
            "regression with {p} coefficients needs more than {p} observations, got {n}"
        )));
    }
    let mut names = vec!["intercept".to_string()];
    names.extend(predictors.iter().map(|(name, _)| name.clone()));
    let x = DMatrix::from_fn(n, p, |r, c| if c == 0 { 1.0 } else { predictors[c - 1].1[r] });
    check_full_rank(&x, &names)?;

    let yv = DVector::from_column_slice(y);
    let beta = x
        .clone()
        .svd(true, true)
        .solve(&yv, RANK_TOLERANCE)
        .map_err(|e| Error::Internal(e.to_string()))?;
    let residuals = &yv - &x * &beta;
    let sse = residuals.norm_squared();
    let sst = sum_sq_dev(y);
    if sst == 0.0 {
        return Err(Error::degenerate(
            "ols",
            "dependent variable is constant; R² is undefined",
        ));
    }
    Ok(OlsFit {
        columns: names,
        beta: beta.iter().copied().collect(),
        r_squared: (1.0 - sse / sst).clamp(0.0, 1.0),
        n,
    })
}

fn check_full_rank(x: &DMatrix<f64>, names: &[String]) -> Result<()> {
    // scale-free tolerance: columns are compared after unit-norm scaling
    let mut scaled = x.clone();
    for mut col in scaled.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= norm;
        }
    }
    for k in 0..scaled.ncols() {
        let sub = scaled.columns(0, k + 1).into_owned();
        let svd = sub.svd(false, true);
        if svd.rank(1e-9) <= k {
            let v_t = svd.v_t.expect("requested V^T");
            let (min_idx, _) = svd
                .singular_values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("nonempty");
            let null = v_t.row(min_idx);
            let with = (0..k)
                .filter(|&j| null[j].abs() > 1e-6)
                .map(|j| names[j].clone())
                .collect();
            return Err(Error::Singular {
                column: names[k].clone(),
                with,
            });
        }
    }
    Ok(())
}

/// A moderated regression `y = β0 + β1·x + β2·m + β3·(a·b) + ε`.
///
/// The interaction factors `(a, b)` are normally the predictor and the
/// moderator; `interaction` overrides them to express models whose product
/// term uses different variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionSpec {
    pub dependent: String,
    pub predictor: String,
    pub moderator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interaction: Option<(String, String)>,
}

impl RegressionSpec {
    pub fn new(dependent: &str, predictor: &str, moderator: &str) -> Self {
        Self {
            dependent: dependent.to_string(),
            predictor: predictor.to_string(),
            moderator: moderator.to_string(),
            interaction: None,
        }
    }

    pub fn interaction_factors(&self) -> (&str, &str) {
        match &self.interaction {
            Some((a, b)) => (a, b),
            None => (&self.predictor, &self.moderator),
        }
    }

    pub fn is_moderated_form(&self) -> bool {
        self.interaction_factors() == (self.predictor.as_str(), self.moderator.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub spec: RegressionSpec,
    pub columns: Vec<String>,
    /// `[β0, β1, β2, β3]`.
    pub beta: [f64; 4],
    pub r_squared: f64,
    /// R² of the main-effects-only model, for the moderation increment.
    pub r_squared_main_effects: f64,
    pub n: usize,
}

/// Fit `spec` on the named columns of `data` by OLS.
pub fn moderated_regression(spec: &RegressionSpec, data: &ItemMatrix) -> Result<RegressionFit> {
    let col = |name: &str| {
        data.column_by_name(name)
            .ok_or_else(|| Error::validation(format!("unknown variable {name:?}")))
    };
    let y = col(&spec.dependent)?;
    if y.len() < 5 {
        return Err(Error::validation(format!(
            "moderated regression needs at least 5 observations, got {}",
            y.len()
        )));
    }
    let x = col(&spec.predictor)?;
    let m = col(&spec.moderator)?;
    let (fa, fb) = spec.interaction_factors();
    let product: Vec<f64> = col(fa)?.iter().zip(col(fb)?).map(|(a, b)| a * b).collect();
    let main = vec![
        (spec.predictor.clone(), x.clone()),
        (spec.moderator.clone(), m.clone()),
    ];
    let main_fit = ols(&main, &y)?;
    let mut full = main;
    full.push((format!("{fa}*{fb}"), product));
    let fit = ols(&full, &y)?;
    Ok(RegressionFit {
        spec: spec.clone(),
        beta: [fit.beta[0], fit.beta[1], fit.beta[2], fit.beta[3]],
        columns: fit.columns,
        r_squared: fit.r_squared,
        r_squared_main_effects: main_fit.r_squared,
        n: fit.n,
    })
}

/// The four moderated-regression models over performance `P`, strategy
/// (`CLS` cost leadership, `DS` differentiation) and the management control
/// system moderators (`FMCS` financial, `NFMCS` non-financial).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelPreset {
    ClsFmcs,
    DsNfmcs,
    ClsNfmcs,
    DsFmcs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresetForm {
    /// The interaction term exactly as originally printed, including the two
    /// models whose product term does not match their main effects.
    AsPublished,
    /// Interaction always `predictor × moderator`.
    #[default]
    Corrected,
}

impl ModelPreset {
    pub const ALL: [ModelPreset; 4] = [
        ModelPreset::ClsFmcs,
        ModelPreset::DsNfmcs,
        ModelPreset::ClsNfmcs,
        ModelPreset::DsFmcs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelPreset::ClsFmcs => "cls-fmcs",
            ModelPreset::DsNfmcs => "ds-nfmcs",
            ModelPreset::ClsNfmcs => "cls-nfmcs",
            ModelPreset::DsFmcs => "ds-fmcs",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::validation(format!(
                    "unknown regression preset {s:?}; expected one of cls-fmcs, ds-nfmcs, cls-nfmcs, ds-fmcs"
                ))
            })
    }

    pub fn spec(self, form: PresetForm) -> RegressionSpec {
        let (x, m, published) = match self {
            ModelPreset::ClsFmcs => ("CLS", "FMCS", ("CLS", "FMCS")),
            ModelPreset::DsNfmcs => ("DS", "NFMCS", ("CLS", "NFMCS")),
            ModelPreset::ClsNfmcs => ("CLS", "NFMCS", ("CLS", "FMCS")),
            ModelPreset::DsFmcs => ("DS", "FMCS", ("DS", "FMCS")),
        };
        let mut spec = RegressionSpec::new("P", x, m);
        if form == PresetForm::AsPublished && published != (x, m) {
            spec.interaction = Some((published.0.to_string(), published.1.to_string()));
        }
        spec
    }
}

/// Respondent indices split at [`STRATEGY_THRESHOLD`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategySplit {
    pub cost_leadership: Vec<usize>,
    pub differentiation: Vec<usize>,
}

/// Strategy value `< threshold` → cost leadership, `>= threshold` →
/// differentiation.
pub fn split_by_strategy(strategy: &[f64], threshold: f64) -> StrategySplit {
    let (low, high): (Vec<usize>, Vec<usize>) =
        (0..strategy.len()).partition(|&i| strategy[i] < threshold);
    StrategySplit {
        cost_leadership: low,
        differentiation: high,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(columns: &[(&str, Vec<f64>)]) -> ItemMatrix {
        let n = columns[0].1.len();
        ItemMatrix::new(
            (0..n).map(|i| i.to_string()).collect(),
            columns.iter().map(|(c, _)| c.to_string()).collect(),
            (0..n).map(|r| columns.iter().map(|(_, v)| v[r]).collect()).collect(),
        )
        .unwrap()
    }

    fn xs() -> (Vec<f64>, Vec<f64>) {
        let x: Vec<f64> = (0..12).map(|i| i as f64 * 0.5).collect();
        let m: Vec<f64> = (0..12).map(|i| ((i * 7) % 5) as f64 + 0.25 * i as f64).collect();
        (x, m)
    }

    #[test]
    fn planted_coefficients() {
        let (x, m) = xs();
        let y: Vec<f64> = x.iter().map(|v| 2.0 + 3.0 * v).collect();
        let d = data(&[("y", y), ("x", x), ("m", m)]);
        let fit = moderated_regression(&RegressionSpec::new("y", "x", "m"), &d).unwrap();
        for (b, want) in fit.beta.iter().zip([2.0, 3.0, 0.0, 0.0]) {
            assert!((b - want).abs() < 1e-9, "{:?}", fit.beta);
        }
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
        assert_eq!(fit.columns, ["intercept", "x", "m", "x*m"]);
    }

    #[test]
    fn interaction_recovered() {
        let (x, m) = xs();
        let y: Vec<f64> = x
            .iter()
            .zip(&m)
            .map(|(a, b)| 1.0 - 0.5 * a + 2.0 * b + 0.75 * a * b)
            .collect();
        let d = data(&[("y", y), ("x", x), ("m", m)]);
        let fit = moderated_regression(&RegressionSpec::new("y", "x", "m"), &d).unwrap();
        for (b, want) in fit.beta.iter().zip([1.0, -0.5, 2.0, 0.75]) {
            assert!((b - want).abs() < 1e-9, "{:?}", fit.beta);
        }
        assert!(fit.r_squared >= fit.r_squared_main_effects);
    }

    #[test]
    fn collinear_design_is_named() {
        let (x, _) = xs();
        let m: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let y: Vec<f64> = x.iter().map(|v| v * v).collect();
        let d = data(&[("y", y), ("x", x), ("m", m)]);
        match moderated_regression(&RegressionSpec::new("y", "x", "m"), &d).unwrap_err() {
            Error::Singular { column, with } => {
                assert_eq!(column, "m");
                assert_eq!(with, ["intercept", "x"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn too_few_observations() {
        let d = data(&[("y", vec![1.0, 2.0, 3.0, 4.0]), ("x", vec![1.0, 3.0, 2.0, 5.0]), ("m", vec![0.0, 1.0, 0.0, 1.0])]);
        assert!(moderated_regression(&RegressionSpec::new("y", "x", "m"), &d).is_err());
    }

    #[test]
    fn presets() {
        let s = ModelPreset::ClsFmcs.spec(PresetForm::AsPublished);
        assert!(s.is_moderated_form());
        let s = ModelPreset::DsNfmcs.spec(PresetForm::AsPublished);
        assert_eq!(s.interaction_factors(), ("CLS", "NFMCS"));
        assert!(!s.is_moderated_form());
        let s = ModelPreset::ClsNfmcs.spec(PresetForm::AsPublished);
        assert_eq!((s.predictor.as_str(), s.moderator.as_str()), ("CLS", "NFMCS"));
        assert_eq!(s.interaction_factors(), ("CLS", "FMCS"));
        for p in ModelPreset::ALL {
            assert!(p.spec(PresetForm::Corrected).is_moderated_form());
            assert_eq!(ModelPreset::parse(p.name()).unwrap(), p);
        }
    }

    #[test]
    fn strategy_split() {
        let s = split_by_strategy(&[2.9, 3.0, 1.0, 4.5], STRATEGY_THRESHOLD);
        assert_eq!(s.cost_leadership, [0, 2]);
        assert_eq!(s.differentiation, [1, 3]);
    }

    #[test]
    fn correlations() {
        let d = data(&[("a", vec![1.0, 2.0, 3.0]), ("b", vec![2.0, 4.0, 6.0]), ("c", vec![3.0, 2.0, 1.0])]);
        let ids: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let r = correlation_matrix(&d, &ids).unwrap();
        assert!((r[0][1].unwrap() - 1.0).abs() < 1e-12);
        assert!((r[0][2].unwrap() + 1.0).abs() < 1e-12);
        assert_eq!(r[1][0], r[0][1]);
    }
}
