//! Parameters of the Landau-Zener-Coulomb model.
//!
//! Level 0 has the Coulomb energy `k2 / t`; every other level `n` has the
//! linear energy `beta_n * t` and couples to level 0 only, with constant
//! strength `g_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling and slope of one linearly driven level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub g: f64,
    pub beta: f64,
}

impl LevelSpec {
    /// Builds a level, folding the coupling sign into the basis phase.
    pub fn new(g: f64, beta: f64) -> Self {
        Self { g: g.abs(), beta }
    }
}

/// A single violated model invariant. Level indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelError {
    ZeroSlope(usize),
    DuplicateSlope(usize, usize),
    NegativeK2,
    NegativeCoupling(usize),
    NonFinite(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::ZeroSlope(n) => write!(f, "level {n} has zero slope"),
            ModelError::DuplicateSlope(n, m) => write!(f, "levels {n} and {m} share a slope"),
            ModelError::NegativeK2 => write!(f, "k2 is negative"),
            ModelError::NegativeCoupling(n) => write!(f, "level {n} has a negative coupling"),
            ModelError::NonFinite(what) => write!(f, "{what} is not finite"),
        }
    }
}

/// The (N+1)-state model: Coulomb strength `k2` plus N linear levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LzcModel {
    pub k2: f64,
    #[serde(default)]
    pub levels: Vec<LevelSpec>,
}

impl LzcModel {
    /// Builds and validates a model. Coupling signs are canonicalized to
    /// `g >= 0` before validation.
    pub fn new(k2: f64, levels: impl IntoIterator<Item = LevelSpec>) -> Result<Self> {
        let model = Self {
            k2,
            levels: levels
                .into_iter()
                .map(|l| LevelSpec::new(l.g, l.beta))
                .collect(),
        };
        model.check()?;
        Ok(model)
    }

    /// Shorthand for `new` taking `(g, beta)` pairs.
    pub fn from_pairs(k2: f64, pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(k2, pairs.iter().map(|&(g, beta)| LevelSpec::new(g, beta)))
    }

    /// Number of linear levels, N.
    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Dimension of the state space, N + 1.
    pub fn dim(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<ModelError>> {
        validate(self)
    }

    pub fn check(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidModel)
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }
}

/// Collects every violated invariant of `model`.
pub fn validate(model: &LzcModel) -> std::result::Result<(), Vec<ModelError>> {
    let mut errors = Vec::new();
    if !model.k2.is_finite() {
        errors.push(ModelError::NonFinite("k2".into()));
    } else if model.k2 < 0.0 {
        errors.push(ModelError::NegativeK2);
    }
    for (i, level) in model.levels.iter().enumerate() {
        let n = i + 1;
        if !level.g.is_finite() {
            errors.push(ModelError::NonFinite(format!("g_{n}")));
        } else if level.g < 0.0 {
            errors.push(ModelError::NegativeCoupling(n));
        }
        if !level.beta.is_finite() {
            errors.push(ModelError::NonFinite(format!("beta_{n}")));
        } else if level.beta == 0.0 {
            errors.push(ModelError::ZeroSlope(n));
        }
    }
    for (i, a) in model.levels.iter().enumerate() {
        for (j, b) in model.levels.iter().enumerate().skip(i + 1) {
            if a.beta != 0.0 && a.beta == b.beta {
                errors.push(ModelError::DuplicateSlope(i + 1, j + 1));
            }
        }
    }
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}
