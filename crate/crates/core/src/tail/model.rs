//! Isoperimetric models used as decay predictors and in the mass recursion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::IsoProfile;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiModel {
    /// `coef · t^exponent`.
    Power { coef: f64, exponent: f64 },
    Constant { value: f64 },
    /// `Φ(t) = values[⌈t⌉ - 1]` on the table, then `coef · t^exponent` from `tail` (or the
    /// last value when there is no tail).
    Step { values: Vec<f64>, tail: Option<(f64, f64)> },
}

impl PhiModel {
    pub fn from_profile(profile: &IsoProfile) -> Self {
        PhiModel::Step {
            values: profile.exact.iter().map(|&(_, v)| v as f64).collect(),
            tail: profile.model.map(|a| (a, profile.exponent)),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            PhiModel::Power { coef, exponent } => coef * t.powf(*exponent),
            PhiModel::Constant { value } => *value,
            PhiModel::Step { values, tail } => {
                let k = t.ceil().max(1.0);
                if k <= values.len() as f64 {
                    values[k as usize - 1]
                } else {
                    match tail {
                        Some((a, e)) => a * t.powf(*e),
                        None => *values.last().unwrap_or(&0.0),
                    }
                }
            }
        }
    }

    /// Last argument covered by an exact table, if any.
    pub fn exact_limit(&self) -> Option<usize> {
        match self {
            PhiModel::Step { values, .. } => Some(values.len()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            PhiModel::Power { coef, exponent } => *coef > 0.0 && exponent.is_finite() && *exponent >= 0.0,
            PhiModel::Constant { value } => *value > 0.0,
            PhiModel::Step { values, tail } => {
                !values.is_empty()
                    && values.iter().all(|&v| v > 0.0)
                    && tail.is_none_or(|(a, e)| a > 0.0 && e >= 0.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid("Phi model must be positive everywhere"))
        }
    }
}
