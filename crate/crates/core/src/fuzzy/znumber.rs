use serde::{Deserialize, Serialize};

use super::Tfn;
use crate::error::{Error, Result};

/// A Z-number: a fuzzy restriction paired with a fuzzy reliability measure on
/// `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawZNumber")]
pub struct ZNumber {
    restriction: Tfn,
    reliability: Tfn,
}

#[derive(Deserialize)]
struct RawZNumber {
    restriction: Tfn,
    reliability: Tfn,
}

impl TryFrom<RawZNumber> for ZNumber {
    type Error = Error;

    fn try_from(raw: RawZNumber) -> Result<Self> {
        ZNumber::new(raw.restriction, raw.reliability)
    }
}

impl ZNumber {
    pub fn new(restriction: Tfn, reliability: Tfn) -> Result<Self> {
        if reliability.a() < 0.0 || reliability.c() > 1.0 {
            return Err(Error::Reliability {
                a: reliability.a(),
                b: reliability.b(),
                c: reliability.c(),
            });
        }
        Ok(ZNumber {
            restriction,
            reliability,
        })
    }

    pub fn restriction(&self) -> Tfn {
        self.restriction
    }

    pub fn reliability(&self) -> Tfn {
        self.reliability
    }

    /// Crisp reliability: the centroid of the reliability component.
    pub fn crisp_reliability(&self) -> f64 {
        self.reliability.centroid()
    }

    /// Collapse to a TFN by weighting the restriction with `sqrt(alpha)`,
    /// where `alpha` is the crisp reliability.
    pub fn to_tfn(&self) -> Tfn {
        let w = self.crisp_reliability().sqrt();
        let r = self.restriction;
        if w == 1.0 {
            return r;
        }
        // sqrt(alpha) >= 0, so the ordering of the restriction carries over
        // for either sign of its components.
        Tfn::from_ordered(w * r.a(), w * r.b(), w * r.c())
    }
}

/// `z_to_tfn` as a free function.
pub fn z_to_tfn(z: &ZNumber) -> Tfn {
    z.to_tfn()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::round_half_up;

    fn t(a: f64, b: f64, c: f64) -> Tfn {
        Tfn::new(a, b, c).unwrap()
    }

    fn rounded(x: Tfn) -> [f64; 3] {
        x.to_array().map(|v| round_half_up(v, 2))
    }

    #[test]
    fn worked_conversions() {
        let medium = t(0.35, 0.5, 0.75);
        let vli = ZNumber::new(t(2.0 / 7.0, 1.0 / 3.0, 2.0 / 5.0), medium).unwrap();
        assert_eq!(rounded(vli.to_tfn()), [0.21, 0.24, 0.29]);

        let weak = t(0.20, 0.35, 0.50);
        let mp = ZNumber::new(t(2.0, 3.5, 5.0), weak).unwrap();
        assert_eq!(rounded(mp.to_tfn()), [1.18, 2.07, 2.96]);

        let g = ZNumber::new(t(7.0, 8.0, 9.0), medium).unwrap();
        assert_eq!(rounded(g.to_tfn()), [5.11, 5.84, 6.57]);
    }

    #[test]
    fn full_reliability_is_identity() {
        let r = t(0.3, 1.7, 2.9);
        let z = ZNumber::new(r, Tfn::ONE).unwrap();
        assert_eq!(z.to_tfn(), r);
    }

    #[test]
    fn reliability_outside_unit_interval_rejected() {
        assert!(ZNumber::new(Tfn::ONE, t(0.5, 0.9, 1.2)).is_err());
        assert!(ZNumber::new(Tfn::ONE, t(-0.1, 0.2, 0.3)).is_err());
        let err = serde_json::from_str::<ZNumber>(
            r#"{"restriction":[1,1,1],"reliability":[0.5,0.9,1.5]}"#,
        );
        assert!(err.is_err());
    }
}
