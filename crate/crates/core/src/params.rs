//! Dimensionless model parameters.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Measurement precision. `0` is a perfect left/right discrimination and
/// `+inf` means no measurement at all; both are explicit code paths.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Sigma(f64);

impl Sigma {
    pub const PERFECT: Sigma = Sigma(0.0);
    pub const NONE: Sigma = Sigma(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 {
            return domain(format!("sigma must be >= 0 or inf, got {value}"));
        }
        Ok(Sigma(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_perfect(self) -> bool {
        self.0 == 0.0
    }

    pub fn is_none(self) -> bool {
        self.0.is_infinite()
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_none() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Sigma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "∞" => Ok(Sigma::NONE),
            _ => {
                let v: f64 = s
                    .parse()
                    .map_err(|_| Error::Domain(format!("cannot parse sigma '{s}'")))?;
                Sigma::new(v)
            }
        }
    }
}

impl Serialize for Sigma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_none() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Sigma {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Sigma::new(v).map_err(serde::de::Error::custom),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Half slit separation `l`, precision `sigma`, time `t` and dephasing width `gamma`.
/// Positions and times are in units of the slit width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    #[serde(rename = "L")]
    pub l: f64,
    pub sigma: Sigma,
    pub t: f64,
    pub gamma: f64,
}

impl ModelParams {
    pub fn new(l: f64, sigma: Sigma, t: f64, gamma: f64) -> Result<Self> {
        check_separation(l)?;
        check_time(t)?;
        if !gamma.is_finite() || gamma < 0.0 {
            return domain(format!("gamma must be finite and >= 0, got {gamma}"));
        }
        Ok(ModelParams { l, sigma, t, gamma })
    }
}

pub(crate) fn check_separation(l: f64) -> Result<()> {
    if !l.is_finite() || l <= 0.0 {
        return domain(format!("L must be finite and > 0, got {l}"));
    }
    Ok(())
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return domain(format!("t must be finite and >= 0, got {t}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_parses_inf_and_numbers() {
        assert!("inf".parse::<Sigma>().unwrap().is_none());
        assert!("Infinity".parse::<Sigma>().unwrap().is_none());
        assert_eq!("4".parse::<Sigma>().unwrap().value(), 4.0);
        assert!("0".parse::<Sigma>().unwrap().is_perfect());
        assert!("-1".parse::<Sigma>().is_err());
        assert!("nan".parse::<Sigma>().is_err());
        assert!("abc".parse::<Sigma>().is_err());
    }

    #[test]
    fn params_reject_bad_domain() {
        assert!(ModelParams::new(0.0, Sigma::NONE, 0.0, 0.0).is_err());
        assert!(ModelParams::new(f64::NAN, Sigma::NONE, 0.0, 0.0).is_err());
        assert!(ModelParams::new(5.0, Sigma::NONE, -1.0, 0.0).is_err());
        assert!(ModelParams::new(5.0, Sigma::NONE, 0.0, f64::INFINITY).is_err());
        assert!(ModelParams::new(5.0, Sigma::NONE, 30.0, 2.0).is_ok());
    }
}
