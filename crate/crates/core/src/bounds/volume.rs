use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::DistanceOracle;

/// Ball volume `V(x)` as a function of a real radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum VolumeFunction {
    /// `V(⌊x⌋)` from a table, continued past the table as a power law with
    /// the last local exponent.
    Tabulated { volumes: Vec<u64>, exponent: f64 },
    /// `coefficient · x^exponent`.
    Power { coefficient: f64, exponent: f64 },
    /// `coefficient · base^x + offset`.
    Exponential { coefficient: f64, base: f64, offset: f64 },
}

impl VolumeFunction {
    pub fn tabulated(volumes: Vec<u64>) -> Result<Self> {
        match volumes.first() {
            None => return Err(Error::Parameter("empty volume table".into())),
            Some(&v0) if v0 < 1 => return Err(Error::Parameter("V(0) must be at least 1".into())),
            _ => {}
        }
        if volumes.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Parameter("volume table must be nondecreasing".into()));
        }
        let n = volumes.len() - 1;
        let exponent = if n >= 2 {
            let (a, b) = (volumes[n - 1] as f64, volumes[n] as f64);
            (b / a).ln() / (n as f64 / (n - 1) as f64).ln()
        } else {
            0.0
        };
        Ok(VolumeFunction::Tabulated { volumes, exponent })
    }

    pub fn from_oracle(oracle: &DistanceOracle) -> Self {
        Self::tabulated(oracle.volumes()).expect("BFS volumes are valid")
    }

    pub fn power(coefficient: f64, exponent: f64) -> Result<Self> {
        if !(coefficient > 0.0 && exponent >= 0.0) {
            return Err(Error::Parameter(format!("bad power law {coefficient}·r^{exponent}")));
        }
        Ok(VolumeFunction::Power { coefficient, exponent })
    }

    pub fn exponential(coefficient: f64, base: f64, offset: f64) -> Result<Self> {
        if !(coefficient > 0.0 && base > 1.0 && coefficient + offset >= 1.0) {
            return Err(Error::Parameter(format!(
                "bad exponential volume {coefficient}·{base}^r + {offset}"
            )));
        }
        Ok(VolumeFunction::Exponential {
            coefficient,
            base,
            offset,
        })
    }

    /// `V(x)`, never below 1.
    pub fn eval(&self, x: f64) -> f64 {
        let v = match self {
            VolumeFunction::Tabulated { volumes, exponent } => {
                let n = volumes.len() - 1;
                let i = x.max(0.0).floor();
                if i <= n as f64 {
                    volumes[i as usize] as f64
                } else {
                    volumes[n] as f64 * (x / n.max(1) as f64).powf(*exponent)
                }
            }
            VolumeFunction::Power { coefficient, exponent } => coefficient * x.max(0.0).powf(*exponent),
            VolumeFunction::Exponential {
                coefficient,
                base,
                offset,
            } => coefficient * base.powf(x.max(0.0)) + offset,
        };
        v.max(1.0)
    }

    pub fn at(&self, r: u64) -> f64 {
        self.eval(r as f64)
    }

    /// Whether `V(x)` comes from the extrapolated part of a table.
    pub fn is_extrapolated(&self, x: f64) -> bool {
        match self {
            VolumeFunction::Tabulated { volumes, .. } => x >= volumes.len() as f64,
            _ => false,
        }
    }

    /// Largest tabulated radius.
    pub fn table_radius(&self) -> Option<u64> {
        match self {
            VolumeFunction::Tabulated { volumes, .. } => Some(volumes.len() as u64 - 1),
            _ => None,
        }
    }
}

impl fmt::Display for VolumeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VolumeFunction::Tabulated { volumes, .. } => write!(f, "table:{}", volumes.len() - 1),
            VolumeFunction::Power { coefficient, exponent } => write!(f, "{coefficient}*r^{exponent}"),
            VolumeFunction::Exponential {
                coefficient,
                base,
                offset,
            } => {
                write!(f, "{coefficient}*{base}^r")?;
                if *offset != 0.0 {
                    write!(f, "{offset:+}")?;
                }
                Ok(())
            }
        }
    }
}

fn number(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parameter(format!("bad {what} '{s}' in volume")))
}

/// Parses `r^D`, `C*r^D`, `expbase:b`, `C*b^r` and `C*b^r±K`.
impl FromStr for VolumeFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(b) = s.strip_prefix("expbase:") {
            return Self::exponential(1.0, number(b, "base")?, 0.0);
        }
        let (coef, rest) = match s.split_once('*') {
            Some((c, rest)) => (number(c, "coefficient")?, rest),
            None => (1.0, s.as_str()),
        };
        if let Some(d) = rest.strip_prefix("r^") {
            return Self::power(coef, number(d, "exponent")?);
        }
        if let Some(pos) = rest.find("^r") {
            let base = number(&rest[..pos], "base")?;
            let tail = &rest[pos + 2..];
            let offset = if tail.is_empty() { 0.0 } else { number(tail, "offset")? };
            return Self::exponential(coef, base, offset);
        }
        Err(Error::Parameter(format!("unrecognized volume '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupModel;

    #[test]
    fn parse_forms() {
        assert_eq!(
            "r^3".parse::<VolumeFunction>().unwrap(),
            VolumeFunction::power(1.0, 3.0).unwrap()
        );
        assert_eq!(
            "2*r^4".parse::<VolumeFunction>().unwrap(),
            VolumeFunction::power(2.0, 4.0).unwrap()
        );
        assert_eq!(
            "expbase:3".parse::<VolumeFunction>().unwrap(),
            VolumeFunction::exponential(1.0, 3.0, 0.0).unwrap()
        );
        let v: VolumeFunction = "2*3^r-1".parse().unwrap();
        assert_eq!(v.at(2), 17.0);
        assert!("q^2".parse::<VolumeFunction>().is_err());
    }

    #[test]
    fn table_and_extrapolation() {
        let oracle = DistanceOracle::build(&GroupModel::ZPower(1), 4).unwrap();
        let v = VolumeFunction::from_oracle(&oracle);
        assert_eq!(v.eval(2.7), 5.0);
        assert!(!v.is_extrapolated(4.5));
        assert!(v.is_extrapolated(5.0));
        let e = v.eval(8.0);
        assert!(e > 9.0 && e < 20.0);
        assert_eq!(v.eval(0.0), 1.0);
    }
}
