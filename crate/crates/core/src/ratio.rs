use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact non-negative rational, serialized as `{"num": .., "den": ..}` in
/// lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(Ratio<u64>);

impl ExactRatio {
    /// # Panics
    ///
    /// If `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        ExactRatio(Ratio::new(num, den))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// Six-decimal rendering for reports.
    pub fn decimal6(&self) -> String {
        format!("{:.6}", self.to_f64())
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    num: u64,
    den: u64,
}

impl Serialize for ExactRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactRatio {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(ExactRatio::new(r.num, r.den))
    }
}
