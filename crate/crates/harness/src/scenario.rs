//! Named scenarios, one per plot-data set.
//!
//! Every sweep uses 31 evenly spaced points over its axis range unless the
//! scenario says otherwise. The fig3 panels sweep whichever coupling their
//! parameter set leaves free: `g2` for fig3a, `g1` for fig3b and fig3c.

use lzc_core::{DiabaticModel, LzcModel, Profile, PropagationConfig, TwoQubitModel};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::template::Template;

pub const DEFAULT_POINTS: usize = 31;

/// Slopes `b2 - b1 (j - 2)` for `j = 1..=4`.
fn ladder(b1: f64, b2: f64) -> [f64; 4] {
    [1.0, 2.0, 3.0, 4.0].map(|j| b2 - b1 * (j - 2.0))
}

const FIG5A_SLOPES: [f64; 4] = [1.5, 1.25, 1.0, 0.75];

/// Where the analytic column of a sweep comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    /// Exact LZC probabilities (for the qubit template, those of the
    /// equivalent LZC model).
    ClosedForm,
    /// Independent-crossing estimate of the survival probability.
    Ica,
    /// Numerics only; two-state models may carry LZC/LZ estimates instead.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Propagate at each sweep value.
    Sweep,
    /// Adiabatic energies at each time of the grid.
    Spectrum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub kind: Kind,
    pub template: Template,
    /// Parameter path swept; `t` for spectra.
    pub path: String,
    pub grid: Vec<f64>,
    pub config: PropagationConfig,
    pub expected: Expected,
}

/// Command-line adjustments to a registered scenario.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub g_min: Option<f64>,
    pub g_max: Option<f64>,
    pub g_steps: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub halving: Option<bool>,
}

pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![lo],
        _ => (0..points)
            .map(|i| if i + 1 == points { hi } else { lo + (hi - lo) * i as f64 / (points - 1) as f64 })
            .collect(),
    }
}

fn default_config() -> PropagationConfig {
    PropagationConfig { halving_check: true, ..PropagationConfig::default() }
}

fn lzc(k2: f64, pairs: &[(f64, f64)]) -> Template {
    Template::Lzc(LzcModel::from_pairs(k2, pairs).expect("registry model is valid"))
}

fn diabatic(diag: Vec<Profile>, couplings: Vec<f64>) -> Template {
    Template::Diabatic(DiabaticModel::new(diag, couplings).expect("registry model is valid"))
}

fn power_law(r: f64) -> Template {
    let mut diag = vec![Profile::PowerLaw { q: 0.2, r }];
    diag.extend(FIG5A_SLOPES.map(|beta| Profile::Linear { beta }));
    diabatic(diag, vec![0.0; 4])
}

fn sweep(name: &str, description: &str, template: Template, path: &str, hi: f64, expected: Expected) -> Scenario {
    Scenario {
        name: name.to_string(),
        description: description.to_string(),
        kind: Kind::Sweep,
        template,
        path: path.to_string(),
        grid: linspace(0.0, hi, DEFAULT_POINTS),
        config: default_config(),
        expected,
    }
}

pub const NAMES: [&str; 15] = [
    "fig1-spectrum",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig5a",
    "fig5b",
    "fig5c",
    "powerlaw-r05",
    "powerlaw-r15",
    "powerlaw-r2",
    "twostate-pos",
    "twostate-neg",
    "check2-left",
    "check2-right",
    "qubit3",
];

pub fn registry() -> Vec<Scenario> {
    NAMES.iter().map(|n| lookup(n).expect("every registered name resolves")).collect()
}

pub fn lookup(name: &str) -> Result<Scenario> {
    use Expected::{ClosedForm, Ica};
    let fig5 = |k2: f64, slopes: [f64; 4]| lzc(k2, &slopes.map(|b| (0.0, b)));
    let scenario = match name {
        "fig1-spectrum" => {
            let slopes = [-2.0, -1.5, -1.0, -0.5, 0.5, 1.0, 1.5, 2.0];
            let pairs: Vec<(f64, f64)> = slopes.iter().map(|&b| (0.2, b)).collect();
            Scenario {
                name: name.to_string(),
                description: "adiabatic energies of a 9-state model, k2 = 1, g = 0.2".to_string(),
                kind: Kind::Spectrum,
                template: lzc(1.0, &pairs),
                path: "t".to_string(),
                grid: linspace(0.05, 5.0, 200),
                config: default_config(),
                expected: Expected::None,
            }
        }
        "fig3a" => sweep(
            name,
            "k2 = 0.7, g1 = 0.3, beta = (1, 0.5), sweep g2",
            lzc(0.7, &[(0.3, 1.0), (0.0, 0.5)]),
            "levels.2.g",
            1.5,
            ClosedForm,
        ),
        "fig3b" => sweep(
            name,
            "k2 = 0.5, g2 = 1, beta = (1, -1), sweep g1",
            lzc(0.5, &[(0.0, 1.0), (1.0, -1.0)]),
            "levels.1.g",
            1.5,
            ClosedForm,
        ),
        "fig3c" => sweep(
            name,
            "k2 = 0.2, g2 = 0.3, beta = (-0.5, -1), sweep g1",
            lzc(0.2, &[(0.0, -0.5), (0.3, -1.0)]),
            "levels.1.g",
            1.5,
            ClosedForm,
        ),
        "fig5a" => sweep(
            name,
            "k2 = 0.2, four positive slopes b1 = 0.25, b2 = 1.25, common g",
            fig5(0.2, ladder(0.25, 1.25)),
            "levels.*.g",
            1.5,
            ClosedForm,
        ),
        "fig5b" => sweep(
            name,
            "k2 = 0.2, four negative slopes b1 = -0.2, b2 = -0.65, common g",
            fig5(0.2, ladder(-0.2, -0.65)),
            "levels.*.g",
            1.5,
            ClosedForm,
        ),
        "fig5c" => sweep(
            name,
            "k2 = 0.15, four negative slopes beta1 = -0.5, beta2 = -1, common g",
            fig5(0.15, ladder(0.5, -1.0)),
            "levels.*.g",
            1.5,
            ClosedForm,
        ),
        "powerlaw-r05" => sweep(name, "level 0 energy 0.2 / t^0.5, fig5a slopes", power_law(0.5), "couplings.*", 3.5, Ica),
        "powerlaw-r15" => sweep(name, "level 0 energy 0.2 / t^1.5, fig5a slopes", power_law(1.5), "couplings.*", 3.5, Ica),
        "powerlaw-r2" => sweep(name, "level 0 energy 0.2 / t^2, fig5a slopes", power_law(2.0), "couplings.*", 3.5, Ica),
        "twostate-pos" => sweep(name, "two levels, beta = 1, k2 = 0.3", lzc(0.3, &[(0.0, 1.0)]), "levels.1.g", 2.0, ClosedForm),
        "twostate-neg" => sweep(name, "two levels, beta = -1, k2 = 0.3", lzc(0.3, &[(0.0, -1.0)]), "levels.1.g", 2.0, ClosedForm),
        "check2-left" => sweep(
            name,
            "level 0 energy 1 / t^2 against beta = 0.5, with tuned LZC and LZ estimates",
            diabatic(vec![Profile::PowerLaw { q: 1.0, r: 2.0 }, Profile::Linear { beta: 0.5 }], vec![0.0]),
            "couplings.1",
            2.0,
            Expected::None,
        ),
        "check2-right" => {
            let mut s = sweep(
                name,
                "level 0 energy 1 + t^2 against a flat level, t from -400, with the tuned LZC estimate",
                diabatic(
                    vec![Profile::Quadratic { eps0: 1.0, kappa: 1.0 }, Profile::Linear { beta: 0.0 }],
                    vec![0.0],
                ),
                "couplings.1",
                2.0,
                Expected::None,
            );
            s.config.t_start = -s.config.t_end;
            s
        }
        "qubit3" => {
            let mut s = sweep(
                name,
                "two qubits, k2 = 0.5, beta = 1, reduced to three states",
                Template::Qubit(TwoQubitModel { k2: 0.5, g: 0.0, beta: 1.0 }),
                "g",
                1.5,
                ClosedForm,
            );
            s.grid = linspace(0.0, 1.5, 15);
            s
        }
        _ => return Err(HarnessError::UnknownScenario(name.to_string())),
    };
    Ok(scenario)
}

impl Scenario {
    /// Applies command-line overrides. The grid flags act on whatever the
    /// scenario sweeps, which is time for spectra.
    pub fn apply(mut self, o: &Overrides) -> Result<Self> {
        if o.g_min.is_some() || o.g_max.is_some() || o.g_steps.is_some() {
            let lo = o.g_min.unwrap_or(self.grid[0]);
            let hi = o.g_max.unwrap_or(*self.grid.last().expect("grids are non-empty"));
            let n = o.g_steps.unwrap_or(self.grid.len());
            self.grid = linspace(lo, hi, n);
        }
        if let Some(dt) = o.dt {
            self.config.dt = dt;
        }
        if let Some(t_end) = o.t_end {
            if self.config.t_start < 0.0 {
                self.config.t_start = -t_end;
            }
            self.config.t_end = t_end;
        }
        if let Some(h) = o.halving {
            self.config.halving_check = h;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid.len() < 2 {
            return Err(HarnessError::InvalidGrid(format!("need at least 2 points, got {}", self.grid.len())));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(HarnessError::InvalidGrid("grid must be strictly increasing".to_string()));
        }
        if self.kind == Kind::Sweep {
            if self.template.builder().singular_at_origin() {
                self.config.validate()?;
            } else {
                self.config.validate_regular()?;
            }
            self.template.get(&self.path)?;
        }
        Ok(())
    }
}
