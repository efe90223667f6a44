//! Compiled-in linguistic scales and the term-to-TFN conversions built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Tfn, ZNumber};
use crate::error::{Error, Result};

macro_rules! linguistic_terms {
    (
        $(#[$meta:meta])*
        $name:ident, $scale:literal {
            $($variant:ident => ($code:literal, $label:literal, $a:expr, $b:expr, $c:expr)),+ $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $code)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn code(self) -> &'static str {
                match self { $($name::$variant => $code),+ }
            }

            pub fn label(self) -> &'static str {
                match self { $($name::$variant => $label),+ }
            }

            pub fn tfn(self) -> Tfn {
                match self { $($name::$variant => Tfn::from_ordered($a, $b, $c)),+ }
            }

            fn valid_codes() -> String {
                Self::ALL.iter().map(|t| t.code()).collect::<Vec<_>>().join(", ")
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim() {
                    $($code => Ok($name::$variant),)+
                    other => Err(Error::UnknownTerm {
                        scale: $scale,
                        term: other.to_string(),
                        valid: Self::valid_codes(),
                    }),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.code())
            }
        }
    };
}

linguistic_terms! {
    /// Relative importance of a criterion against the one ranked just above it.
    ImportanceTerm, "weighting-importance" {
        EqualImportance => ("EI", "Equally important", 1.0, 1.0, 1.0),
        ModeratelyLess => ("MOL", "Moderately less important", 2.0 / 3.0, 1.0, 3.0 / 2.0),
        Less => ("LI", "Less important", 2.0 / 5.0, 1.0 / 2.0, 2.0 / 3.0),
        VeryLess => ("VLI", "Very less important", 2.0 / 7.0, 1.0 / 3.0, 2.0 / 5.0),
        MuchLess => ("MUL", "Much less important", 2.0 / 9.0, 1.0 / 4.0, 2.0 / 7.0),
    }
}

linguistic_terms! {
    /// Confidence an expert attaches to a judgment.
    ReliabilityTerm, "reliability" {
        VeryWeak => ("VW", "Very Weak", 0.0, 0.0, 0.25),
        Weak => ("W", "Weak", 0.2, 0.35, 0.5),
        Medium => ("M", "Medium", 0.35, 0.5, 0.75),
        High => ("H", "High", 0.5, 0.75, 0.9),
        VeryHigh => ("VH", "Very High", 0.75, 1.0, 1.0),
    }
}

linguistic_terms! {
    /// Rating of a failure mode against one criterion.
    RatingTerm, "rating" {
        VeryPoor => ("VP", "Very Poor", 0.0, 1.0, 2.0),
        Poor => ("P", "Poor", 1.0, 2.0, 3.0),
        MediumPoor => ("MP", "Medium Poor", 2.0, 3.5, 5.0),
        Fair => ("F", "Fair", 4.0, 5.0, 6.0),
        MediumGood => ("MG", "Medium Good", 5.0, 6.5, 8.0),
        Good => ("G", "Good", 7.0, 8.0, 9.0),
        VeryGood => ("VG", "Very Good", 8.0, 9.0, 10.0),
    }
}

/// How `(EI, *)` weighting pairs are converted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EiMode {
    /// `(EI, *)` maps to `(1, 1, 1)` regardless of reliability, as in the
    /// reference transformation table.
    #[default]
    Table,
    /// Every pair, EI included, goes through the Z-number conversion.
    Computed,
}

/// Convert an (importance, reliability) judgment into a TFN.
pub fn weighting_term_to_tfn(
    importance: ImportanceTerm,
    reliability: ReliabilityTerm,
    mode: EiMode,
) -> Tfn {
    if mode == EiMode::Table && importance == ImportanceTerm::EqualImportance {
        return Tfn::ONE;
    }
    z_of(importance.tfn(), reliability).to_tfn()
}

/// Convert a (rating, reliability) judgment into a TFN.
pub fn rating_term_to_tfn(rating: RatingTerm, reliability: ReliabilityTerm) -> Tfn {
    z_of(rating.tfn(), reliability).to_tfn()
}

fn z_of(restriction: Tfn, reliability: ReliabilityTerm) -> ZNumber {
    ZNumber::new(restriction, reliability.tfn())
        .expect("reliability scale entries lie in [0, 1]")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleName {
    WeightingImportance,
    Reliability,
    Rating,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaleEntry {
    pub code: &'static str,
    pub label: &'static str,
    pub tfn: Tfn,
}

/// A named linguistic scale, in scale order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinguisticScale {
    pub name: ScaleName,
    pub entries: Vec<ScaleEntry>,
}

impl LinguisticScale {
    pub fn weighting_importance() -> Self {
        Self {
            name: ScaleName::WeightingImportance,
            entries: ImportanceTerm::ALL
                .iter()
                .map(|t| ScaleEntry {
                    code: t.code(),
                    label: t.label(),
                    tfn: t.tfn(),
                })
                .collect(),
        }
    }

    pub fn reliability() -> Self {
        Self {
            name: ScaleName::Reliability,
            entries: ReliabilityTerm::ALL
                .iter()
                .map(|t| ScaleEntry {
                    code: t.code(),
                    label: t.label(),
                    tfn: t.tfn(),
                })
                .collect(),
        }
    }

    pub fn rating() -> Self {
        Self {
            name: ScaleName::Rating,
            entries: RatingTerm::ALL
                .iter()
                .map(|t| ScaleEntry {
                    code: t.code(),
                    label: t.label(),
                    tfn: t.tfn(),
                })
                .collect(),
        }
    }

    pub fn all() -> Vec<Self> {
        vec![
            Self::weighting_importance(),
            Self::reliability(),
            Self::rating(),
        ]
    }

    pub fn get(&self, code: &str) -> Option<Tfn> {
        self.entries.iter().find(|e| e.code == code).map(|e| e.tfn)
    }
}

/// One row of a Z-number to TFN transformation table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformRow {
    pub first: &'static str,
    pub reliability: &'static str,
    pub tfn: Tfn,
}

/// Every (importance, reliability) pair with its converted TFN, in scale
/// order.
pub fn weighting_transform_table(mode: EiMode) -> Vec<TransformRow> {
    ImportanceTerm::ALL
        .iter()
        .flat_map(|&i| {
            ReliabilityTerm::ALL.iter().map(move |&r| TransformRow {
                first: i.code(),
                reliability: r.code(),
                tfn: weighting_term_to_tfn(i, r, mode),
            })
        })
        .collect()
}

/// Every (rating, reliability) pair with its converted TFN, in scale order.
pub fn rating_transform_table() -> Vec<TransformRow> {
    RatingTerm::ALL
        .iter()
        .flat_map(|&g| {
            ReliabilityTerm::ALL.iter().map(move |&r| TransformRow {
                first: g.code(),
                reliability: r.code(),
                tfn: rating_term_to_tfn(g, r),
            })
        })
        .collect()
}
