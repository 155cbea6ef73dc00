use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Precision of a Gaussian fuzzy number: a value in `[0, +inf]` where
/// `+inf` is its own state rather than a float sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Precision {
    Finite(f64),
    Infinite,
}

impl Precision {
    pub const ZERO: Precision = Precision::Finite(0.0);

    /// Finite nonnegative precision. `f64::INFINITY` maps to
    /// [`Precision::Infinite`].
    pub fn new(h: f64) -> Result<Self> {
        if h.is_nan() || h < 0.0 {
            return Err(Error::validation(
                "precision",
                format!("must lie in [0, +inf], got {h}"),
            ));
        }
        Ok(if h == f64::INFINITY {
            Precision::Infinite
        } else {
            Precision::Finite(h)
        })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Precision::Finite(h) if *h == 0.0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Precision::Infinite)
    }

    /// The finite value, if any.
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Precision::Finite(h) => Some(h),
            Precision::Infinite => None,
        }
    }

    /// Strictly positive and finite.
    pub fn is_proper(&self) -> bool {
        matches!(self, Precision::Finite(h) if *h > 0.0)
    }

    /// IEEE view used only for display and serialization.
    pub fn as_f64(&self) -> f64 {
        match *self {
            Precision::Finite(h) => h,
            Precision::Infinite => f64::INFINITY,
        }
    }

    /// `h1 + h2` in the extended reals.
    pub fn sum(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Finite(a), Precision::Finite(b)) => Precision::Finite(a + b),
            _ => Precision::Infinite,
        }
    }

    /// `h1 h2 / (h1 + h2)`, the precision of the height exponent of a
    /// normalized product. Zero when either factor is zero.
    pub fn harmonic(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Finite(a), Precision::Finite(b)) => {
                if a == 0.0 || b == 0.0 {
                    Precision::ZERO
                } else {
                    Precision::Finite(a * b / (a + b))
                }
            }
            (Precision::Infinite, p) | (p, Precision::Infinite) => p,
        }
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Finite(h) => write!(f, "{h}"),
            Precision::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Precision {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Precision::Finite(h) => s.serialize_f64(h),
            Precision::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Precision {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct PrecisionVisitor;

        impl Visitor<'_> for PrecisionVisitor {
            type Value = Precision;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative number or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Precision, E> {
                Precision::new(v).map_err(E::custom)
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Precision, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Precision, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Precision, E> {
                match v {
                    "inf" | "+inf" | "Infinity" => Ok(Precision::Infinite),
                    other => other
                        .parse::<f64>()
                        .map_err(|_| E::custom(format!("unrecognized precision {other:?}")))
                        .and_then(|x| self.visit_f64(x)),
                }
            }
        }

        d.deserialize_any(PrecisionVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let inf: Precision = serde_json::from_str("\"inf\"").unwrap();
        assert!(inf.is_infinite());
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"inf\"");
        let h: Precision = serde_json::from_str("2.5").unwrap();
        assert_eq!(h, Precision::Finite(2.5));
        let h: Precision = serde_json::from_str("3").unwrap();
        assert_eq!(h, Precision::Finite(3.0));
        assert!(serde_json::from_str::<Precision>("-1").is_err());
    }

    #[test]
    fn extended_arithmetic() {
        let one = Precision::Finite(1.0);
        assert_eq!(one.harmonic(one), Precision::Finite(0.5));
        assert_eq!(one.harmonic(Precision::Infinite), one);
        assert_eq!(Precision::Infinite.harmonic(Precision::Infinite), Precision::Infinite);
        assert_eq!(Precision::ZERO.harmonic(Precision::Infinite), Precision::ZERO);
        assert_eq!(one.sum(Precision::Infinite), Precision::Infinite);
        assert!(Precision::new(f64::INFINITY).unwrap().is_infinite());
    }
}
