//! Model templates and the dotted parameter paths that address their real
//! fields.
//!
//! Paths count levels the way the model does: `levels.2.g` is the coupling of
//! level 2 (levels start at 1), `diag.0.q` is a field of the level 0 profile
//! and `couplings.3` couples level 0 to level 3. A `*` in place of an index
//! sets that field on every level.

use lzc_core::{DiabaticModel, HamiltonianBuilder, LzcModel, Profile, TwoQubitModel};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Template {
    Lzc(LzcModel),
    Diabatic(DiabaticModel),
    Qubit(TwoQubitModel),
}

impl Template {
    /// Parses a model file: a tagged template if it has a `kind` key, a
    /// general diabatic model if it has `diag`, otherwise an LZC model.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let template = if value.get("kind").is_some() {
            serde_json::from_value(value)?
        } else if value.get("diag").is_some() {
            Template::Diabatic(DiabaticModel::from_json(text)?)
        } else {
            Template::Lzc(serde_json::from_value(value)?)
        };
        template.check()?;
        Ok(template)
    }

    pub fn dim(&self) -> usize {
        match self {
            Template::Lzc(m) => m.dim(),
            Template::Diabatic(m) => m.dim(),
            Template::Qubit(_) => 3,
        }
    }

    pub fn builder(&self) -> &dyn HamiltonianBuilder {
        match self {
            Template::Lzc(m) => m,
            Template::Diabatic(m) => m,
            Template::Qubit(m) => m,
        }
    }

    pub fn check(&self) -> lzc_core::Result<()> {
        match self {
            Template::Lzc(m) => m.check(),
            Template::Diabatic(m) => m.check(),
            Template::Qubit(m) => m.equivalent_lzc().map(|_| ()),
        }
    }

    /// Current value at `path`; for a `*` path, the value on the first level.
    pub fn get(&self, path: &str) -> Result<f64> {
        let mut copy = self.clone();
        let mut found = None;
        copy.visit(path, &mut |x| {
            found.get_or_insert(*x);
        })?;
        found.ok_or_else(|| HarnessError::BadPath(path.to_string()))
    }

    /// Writes `value` at `path` without validating the resulting model.
    pub fn set(&mut self, path: &str, value: f64) -> Result<()> {
        self.visit(path, &mut |x| *x = value)
    }

    /// Copy with `value` at `path`, validated.
    pub fn with(&self, path: &str, value: f64) -> Result<Self> {
        let mut out = self.clone();
        out.set(path, value)?;
        out.check()
            .map_err(|source| HarnessError::InvalidModelAtPoint { value, source })?;
        Ok(out)
    }

    fn visit(&mut self, path: &str, f: &mut dyn FnMut(&mut f64)) -> Result<()> {
        let bad = || HarnessError::BadPath(path.to_string());
        let parts: Vec<&str> = path.split('.').collect();
        match (self, parts.as_slice()) {
            (Template::Lzc(m), ["k2"]) => f(&mut m.k2),
            (Template::Lzc(m), ["levels", index, field]) => {
                let n = m.levels.len();
                for i in indices(index, 1, n).ok_or_else(bad)? {
                    let level = &mut m.levels[i - 1];
                    match *field {
                        "g" => f(&mut level.g),
                        "beta" => f(&mut level.beta),
                        _ => return Err(bad()),
                    }
                }
            }
            (Template::Diabatic(m), ["couplings", index]) => {
                let n = m.couplings.len();
                for i in indices(index, 1, n).ok_or_else(bad)? {
                    f(&mut m.couplings[i - 1]);
                }
            }
            (Template::Diabatic(m), ["diag", index, field]) => {
                let n = m.diag.len();
                for i in indices(index, 0, n.saturating_sub(1)).ok_or_else(bad)? {
                    f(profile_field(&mut m.diag[i], field).ok_or_else(bad)?);
                }
            }
            (Template::Qubit(m), [field]) => match *field {
                "k2" => f(&mut m.k2),
                "g" => f(&mut m.g),
                "beta" => f(&mut m.beta),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        }
        Ok(())
    }
}

/// Indices named by `index` within `lo..=hi`.
fn indices(index: &str, lo: usize, hi: usize) -> Option<Vec<usize>> {
    if hi < lo {
        return None;
    }
    if index == "*" {
        return Some((lo..=hi).collect());
    }
    let i: usize = index.parse().ok()?;
    (lo..=hi).contains(&i).then(|| vec![i])
}

fn profile_field<'a>(p: &'a mut Profile, field: &str) -> Option<&'a mut f64> {
    match (p, field) {
        (Profile::Coulomb { k2 }, "k2") => Some(k2),
        (Profile::PowerLaw { q, .. }, "q") => Some(q),
        (Profile::PowerLaw { r, .. }, "r") => Some(r),
        (Profile::Linear { beta }, "beta") => Some(beta),
        (Profile::Quadratic { eps0, .. }, "eps0") => Some(eps0),
        (Profile::Quadratic { kappa, .. }, "kappa") => Some(kappa),
        (Profile::QuadraticSkew { beta, .. }, "beta") => Some(beta),
        (Profile::QuadraticSkew { kappa, .. }, "kappa") => Some(kappa),
        _ => None,
    }
}
