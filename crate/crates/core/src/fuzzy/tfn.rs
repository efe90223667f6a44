use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A triangular fuzzy number `(a, b, c)` with `a <= b <= c`.
///
/// The fields are private: [`Tfn::new`] is the only way to build one, so
/// every value in circulation satisfies the ordering invariant and has finite
/// components. All operations return fresh values.
#[derive(Clone, Copy, PartialEq)]
pub struct Tfn {
    a: f64,
    b: f64,
    c: f64,
}

impl Tfn {
    pub const ONE: Tfn = Tfn {
        a: 1.0,
        b: 1.0,
        c: 1.0,
    };
    pub const ZERO: Tfn = Tfn {
        a: 0.0,
        b: 0.0,
        c: 0.0,
    };

    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let non_finite: Vec<&str> = [("a", a), ("b", b), ("c", c)]
            .iter()
            .filter(|(_, v)| !v.is_finite())
            .map(|(n, _)| *n)
            .collect();
        if !non_finite.is_empty() {
            return Err(Error::TfnConstruction {
                a,
                b,
                c,
                reason: format!("non-finite component(s) {}", non_finite.join(", ")),
            });
        }
        if a > b {
            return Err(Error::TfnConstruction {
                a,
                b,
                c,
                reason: format!("ordering violated: a = {a} > b = {b}"),
            });
        }
        if b > c {
            return Err(Error::TfnConstruction {
                a,
                b,
                c,
                reason: format!("ordering violated: b = {b} > c = {c}"),
            });
        }
        Ok(Tfn { a, b, c })
    }

    /// Degenerate TFN `(x, x, x)`.
    pub fn crisp(x: f64) -> Result<Self> {
        Tfn::new(x, x, x)
    }

    /// Internal constructor for results of monotone operations on valid
    /// inputs, where ordering holds by construction.
    pub(crate) fn from_ordered(a: f64, b: f64, c: f64) -> Self {
        debug_assert!(a <= b && b <= c, "ordering broken: ({a}, {b}, {c})");
        Tfn { a, b, c }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0.0
    }

    fn require_nonnegative(&self, op: &'static str) -> Result<()> {
        if self.is_nonnegative() {
            Ok(())
        } else {
            Err(Error::domain(
                op,
                format!("operand {self} has a negative component"),
            ))
        }
    }

    /// Componentwise multiplication; both operands must be nonnegative.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Tfn) -> Result<Tfn> {
        self.require_nonnegative("tfn_mul")?;
        rhs.require_nonnegative("tfn_mul")?;
        Ok(Tfn::from_ordered(
            self.a * rhs.a,
            self.b * rhs.b,
            self.c * rhs.c,
        ))
    }

    /// Multiplication by a nonnegative crisp scalar.
    pub fn scale(self, k: f64) -> Result<Tfn> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::domain(
                "tfn_scale",
                format!("scalar {k} must be finite and nonnegative"),
            ));
        }
        Ok(Tfn::from_ordered(self.a * k, self.b * k, self.c * k))
    }

    /// Reversed-component division `(a/c', b/b', c/a')`.
    ///
    /// The divisor must be strictly positive and the dividend nonnegative.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, rhs: Tfn) -> Result<Tfn> {
        if rhs.a <= 0.0 {
            return Err(Error::domain(
                "tfn_div",
                format!("divisor {rhs} must be strictly positive"),
            ));
        }
        self.require_nonnegative("tfn_div")?;
        Ok(Tfn::from_ordered(
            self.a / rhs.c,
            self.b / rhs.b,
            self.c / rhs.a,
        ))
    }

    /// Componentwise power with a crisp exponent in `[0, 1]`.
    pub fn pow(self, w: f64) -> Result<Tfn> {
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::domain(
                "tfn_pow",
                format!("exponent {w} outside [0, 1]"),
            ));
        }
        self.require_nonnegative("tfn_pow")?;
        Ok(Tfn::from_ordered(
            self.a.powf(w),
            self.b.powf(w),
            self.c.powf(w),
        ))
    }

    /// Center of area of the triangular membership function.
    ///
    /// For a triangle the ratio of integrals `∫y·μ(y)dy / ∫μ(y)dy` reduces to
    /// `(a + b + c) / 3`; the degenerate case returns the common component.
    pub fn centroid(&self) -> f64 {
        if self.a == self.c {
            return self.a;
        }
        ((self.a + self.b + self.c) / 3.0).clamp(self.a, self.c)
    }

    /// Componentwise arithmetic mean. Returns `None` for an empty input.
    pub fn mean<'a, I>(values: I) -> Option<Tfn>
    where
        I: IntoIterator<Item = &'a Tfn>,
    {
        let (sum, n) = values
            .into_iter()
            .fold((Tfn::ZERO, 0usize), |(acc, n), t| (acc + *t, n + 1));
        if n == 0 {
            return None;
        }
        let n = n as f64;
        Some(Tfn::from_ordered(sum.a / n, sum.b / n, sum.c / n))
    }

    /// True when every component of `self` is `>=` the matching component of
    /// `other`.
    pub fn dominates(&self, other: &Tfn) -> bool {
        self.a >= other.a && self.b >= other.b && self.c >= other.c
    }
}

impl Add for Tfn {
    type Output = Tfn;

    fn add(self, rhs: Tfn) -> Tfn {
        Tfn::from_ordered(self.a + rhs.a, self.b + rhs.b, self.c + rhs.c)
    }
}

impl std::iter::Sum for Tfn {
    fn sum<I: Iterator<Item = Tfn>>(iter: I) -> Tfn {
        iter.fold(Tfn::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Debug for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tfn({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Display for Tfn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.p$}, {:.p$}, {:.p$})", self.a, self.b, self.c),
            None => write!(f, "({}, {}, {})", self.a, self.b, self.c),
        }
    }
}

impl Serialize for Tfn {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tfn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [a, b, c] = <[f64; 3]>::deserialize(deserializer)?;
        Tfn::new(a, b, c).map_err(serde::de::Error::custom)
    }
}

/// Round half away from zero to `places` decimals.
///
/// A relative nudge of a few ulps absorbs binary representation error so that
/// printed values such as `0.125` or `2.0706` round the way a reader expects.
pub fn round_half_up(x: f64, places: u32) -> f64 {
    let factor = 10f64.powi(places as i32);
    let scaled = x.abs() * factor;
    let nudged = scaled + scaled.max(1.0) * 4.0 * f64::EPSILON;
    (nudged + 0.5).floor().copysign(x) / factor
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: f64, b: f64, c: f64) -> Tfn {
        Tfn::new(a, b, c).unwrap()
    }

    fn assert_close(x: Tfn, y: [f64; 3], tol: f64) {
        for (u, v) in x.to_array().iter().zip(y) {
            assert!((u - v).abs() <= tol, "{x:?} vs {y:?}");
        }
    }

    #[test]
    fn construction() {
        assert_eq!(t(1.0, 1.0, 1.0), Tfn::ONE);
        let li = t(2.0 / 5.0, 0.5, 2.0 / 3.0);
        assert_eq!(round_half_up(li.c(), 3), 0.667);
        assert!(matches!(
            Tfn::new(3.0, 2.0, 1.0),
            Err(Error::TfnConstruction { .. })
        ));
        let err = Tfn::new(0.0, f64::NAN, 1.0).unwrap_err().to_string();
        assert!(err.contains("non-finite component(s) b"), "{err}");
        let err = Tfn::new(0.0, 2.0, 1.0).unwrap_err().to_string();
        assert!(err.contains("b = 2 > c = 1"), "{err}");
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(t(1.0, 2.0, 3.0) + t(1.0, 2.0, 3.0), t(2.0, 4.0, 6.0));
        assert_eq!(t(1.0, 2.0, 3.0).mul(Tfn::ZERO).unwrap(), Tfn::ZERO);
        assert_eq!(
            t(2.0, 3.5, 5.0).mul(t(2.0, 3.5, 5.0)).unwrap(),
            t(4.0, 12.25, 25.0)
        );
        assert_eq!(t(1.0, 2.0, 3.0).scale(2.0).unwrap(), t(2.0, 4.0, 6.0));
        assert!(t(-1.0, 0.0, 1.0).mul(Tfn::ONE).is_err());
        assert!(Tfn::ONE.scale(-0.5).is_err());
    }

    #[test]
    fn division_examples() {
        assert_eq!(Tfn::ONE.div(t(2.0, 2.0, 2.0)).unwrap(), t(0.5, 0.5, 0.5));
        assert_eq!(
            t(1.0, 2.0, 3.0).div(t(1.0, 2.0, 4.0)).unwrap(),
            t(0.25, 1.0, 3.0)
        );
        assert_eq!(Tfn::ZERO.div(t(1.0, 2.0, 3.0)).unwrap(), Tfn::ZERO);
        let err = Tfn::ONE.div(t(0.0, 1.0, 2.0)).unwrap_err();
        assert_eq!(err.code(), "fuzzy.domain");
    }

    #[test]
    fn power_examples() {
        assert_eq!(t(4.0, 9.0, 16.0).pow(0.5).unwrap(), t(2.0, 3.0, 4.0));
        assert_eq!(t(0.3, 0.5, 0.7).pow(0.0).unwrap(), Tfn::ONE);
        assert_eq!(t(0.3, 0.5, 0.7).pow(1.0).unwrap(), t(0.3, 0.5, 0.7));
        assert!(t(0.3, 0.5, 0.7).pow(1.5).is_err());
        assert!(t(0.3, 0.5, 0.7).pow(-0.1).is_err());
    }

    #[test]
    fn centroid_examples() {
        assert!((t(0.35, 0.5, 0.75).centroid() - 0.533_333_333_333).abs() < 1e-9);
        assert_eq!(round_half_up(t(0.35, 0.5, 0.75).centroid(), 2), 0.53);
        assert!((t(0.20, 0.35, 0.50).centroid() - 0.35).abs() < 1e-12);
        for x in [0.0, 0.1, 7.25, 1e6] {
            assert_eq!(Tfn::crisp(x).unwrap().centroid(), x);
        }
    }

    #[test]
    fn mean_of_cells() {
        let m = Tfn::mean(&[t(0.56, 0.85, 1.27), t(0.34, 0.42, 0.56)]).unwrap();
        assert_close(m, [0.45, 0.635, 0.915], 1e-12);
        assert!(Tfn::mean(&[]).is_none());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(2.0706, 2), 2.07);
        assert_eq!(round_half_up(0.125, 2), 0.13);
        assert_eq!(round_half_up(1.005, 2), 1.01);
        assert_eq!(round_half_up(-0.125, 2), -0.13);
        assert_eq!(round_half_up(0.5333, 2), 0.53);
    }

    #[test]
    fn serde_as_triple() {
        let json = serde_json::to_string(&t(0.25, 1.0, 3.0)).unwrap();
        assert_eq!(json, "[0.25,1.0,3.0]");
        let back: Tfn = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t(0.25, 1.0, 3.0));
        assert!(serde_json::from_str::<Tfn>("[3,2,1]").is_err());
    }
}
