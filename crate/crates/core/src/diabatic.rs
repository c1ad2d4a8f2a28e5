//! Generic star-coupled Hamiltonians: one energy profile per level and
//! constant couplings between level 0 and every other level.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::LzcModel;

/// Time dependence of one diabatic energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Profile {
    /// `k2 / t`
    Coulomb { k2: f64 },
    /// `q / t^r`
    PowerLaw { q: f64, r: f64 },
    /// `beta * t`
    Linear { beta: f64 },
    /// `eps0 + t^2 / kappa`
    Quadratic { eps0: f64, kappa: f64 },
    /// `-beta * t + t^2 / kappa`
    QuadraticSkew { beta: f64, kappa: f64 },
}

const PROFILE_NAMES: [&str; 5] = ["coulomb", "power_law", "linear", "quadratic", "quadratic_skew"];

impl Profile {
    /// Whether the profile diverges at `t = 0`.
    pub fn is_singular(&self) -> bool {
        match *self {
            Profile::Coulomb { k2 } => k2 != 0.0,
            Profile::PowerLaw { q, r } => q != 0.0 && r > 0.0,
            _ => false,
        }
    }

    pub fn energy(&self, t: f64) -> Result<f64> {
        if self.is_singular() && t <= 0.0 {
            return Err(Error::NonPositiveTime(t));
        }
        Ok(self.energy_unchecked(t))
    }

    #[inline]
    pub(crate) fn energy_unchecked(&self, t: f64) -> f64 {
        match *self {
            Profile::Coulomb { k2 } => k2 / t,
            Profile::PowerLaw { q, r } => q / t.powf(r),
            Profile::Linear { beta } => beta * t,
            Profile::Quadratic { eps0, kappa } => eps0 + t * t / kappa,
            Profile::QuadraticSkew { beta, kappa } => -beta * t + t * t / kappa,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiabaticModel {
    pub diag: Vec<Profile>,
    /// `couplings[n - 1]` couples level 0 to level `n`.
    pub couplings: Vec<f64>,
}

impl DiabaticModel {
    pub fn new(diag: Vec<Profile>, couplings: Vec<f64>) -> Result<Self> {
        let model = Self { diag, couplings };
        model.check()?;
        Ok(model)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn check(&self) -> Result<()> {
        if self.diag.is_empty() {
            return Err(Error::InvalidParameter("diabatic model needs at least one level".into()));
        }
        if self.couplings.len() + 1 != self.diag.len() {
            return Err(Error::DimensionMismatch {
                expected: self.diag.len() - 1,
                got: self.couplings.len(),
            });
        }
        if let Some(g) = self.couplings.iter().find(|g| !g.is_finite()) {
            return Err(Error::InvalidParameter(format!("coupling {g} is not finite")));
        }
        Ok(())
    }

    pub fn is_singular(&self) -> bool {
        self.diag.iter().any(Profile::is_singular)
    }

    /// Parses the model file format, reporting unrecognised profile types
    /// as [`Error::UnknownProfile`].
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        if let Some(diag) = value.get("diag").and_then(|d| d.as_array()) {
            for entry in diag {
                let kind = entry.get("type").and_then(|t| t.as_str()).unwrap_or("<missing>");
                if !PROFILE_NAMES.contains(&kind) {
                    return Err(Error::UnknownProfile(kind.to_string()));
                }
            }
        }
        let model: Self =
            serde_json::from_value(value).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        model.check()?;
        Ok(model)
    }
}

impl From<&LzcModel> for DiabaticModel {
    fn from(model: &LzcModel) -> Self {
        let mut diag = vec![Profile::Coulomb { k2: model.k2 }];
        diag.extend(model.levels.iter().map(|l| Profile::Linear { beta: l.beta }));
        Self {
            diag,
            couplings: model.levels.iter().map(|l| l.g).collect(),
        }
    }
}
