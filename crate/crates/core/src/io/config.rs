use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmea::Method;
use crate::fuzzy::EiMode;
use crate::swara::{Recurrence, SwaraOptions};
use crate::waspas::{MatrixMode, DEFAULT_TIE_TOLERANCE};

const MAX_ROUNDING: u32 = 12;

fn default_rounding() -> u32 {
    2
}

fn default_tie_tolerance() -> f64 {
    DEFAULT_TIE_TOLERANCE
}

fn default_methods() -> Vec<Method> {
    vec![Method::Rpn, Method::FuzzyWaspas, Method::ZWaspas]
}

fn default_sensitivity_mode() -> MatrixMode {
    MatrixMode::Z
}

/// Analysis settings, read from a JSON object. Every field is optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    #[serde(default)]
    pub swara_recurrence: Recurrence,
    #[serde(default)]
    pub ei_mode: EiMode,
    /// Decimal places in markdown tables.
    #[serde(default = "default_rounding")]
    pub rounding: u32,
    #[serde(default = "default_tie_tolerance")]
    pub tie_tolerance: f64,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    /// Weight-case file path or preset name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensitivity_cases: Option<String>,
    /// Which WASPAS pipeline the sensitivity sweep reruns.
    #[serde(default = "default_sensitivity_mode")]
    pub sensitivity_mode: MatrixMode,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            swara_recurrence: Recurrence::default(),
            ei_mode: EiMode::default(),
            rounding: default_rounding(),
            tie_tolerance: default_tie_tolerance(),
            methods: default_methods(),
            sensitivity_cases: None,
            sensitivity_mode: default_sensitivity_mode(),
        }
    }
}

impl AnalysisConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_string(),
            line: e.line() as u64,
            reason: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn validate(&self) -> Result<()> {
        if self.rounding > MAX_ROUNDING {
            return Err(Error::validation(format!(
                "rounding must be at most {MAX_ROUNDING}, got {}",
                self.rounding
            )));
        }
        if !(self.tie_tolerance.is_finite() && self.tie_tolerance > 0.0) {
            return Err(Error::validation(format!(
                "tie_tolerance must be a positive number, got {}",
                self.tie_tolerance
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::validation("methods must name at least one method"));
        }
        let mut sorted = self.methods.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != self.methods.len() {
            return Err(Error::validation("methods lists a method more than once"));
        }
        Ok(())
    }

    pub fn swara_options(&self) -> SwaraOptions {
        SwaraOptions {
            recurrence: self.swara_recurrence,
            ei_mode: self.ei_mode,
        }
    }

    pub fn runs(&self, method: Method) -> bool {
        self.methods.contains(&method)
    }

    /// Selected methods in table order (RPN, fuzzy, Z).
    pub fn ordered_methods(&self) -> Vec<Method> {
        let mut m = self.methods.clone();
        m.sort();
        m
    }
}
