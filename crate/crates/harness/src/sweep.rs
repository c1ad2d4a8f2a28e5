//! Parameter sweeps: one propagation (and, where available, one analytic
//! prediction) per grid value.

use lzc_core::analytic::{ica_log10_survival, ica_survival, lzc_from_avoided_crossing, two_state_survival};
use lzc_core::hamiltonian::adiabatic_energies;
use lzc_core::propagator::initial_state;
use lzc_core::state::max_abs_diff;
use lzc_core::{distribution, propagate, DiabaticModel, HamiltonianBuilder, Profile, PropagationConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::qubit;
use crate::scenario::{Expected, Kind, Scenario};
use crate::template::Template;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub sweep_value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic: Option<Vec<f64>>,
    /// Empty when no propagation was run.
    #[serde(default)]
    pub numeric: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs_err: Option<f64>,
    /// Largest probability change at `dt / 2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt_deviation: Option<f64>,
    /// `max_abs_err` of the `dt / 2` run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_abs_err_halved: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_drift: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log10_ica: Option<f64>,
    /// Two-state LZC survival probability with matched crossing parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lzc_estimate: Option<f64>,
    /// Landau-Zener survival probability with the same crossing rate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lz_estimate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoupled_amplitude: Option<f64>,
}

impl SweepRow {
    fn new(sweep_value: f64) -> Self {
        Self {
            sweep_value,
            analytic: None,
            numeric: Vec::new(),
            max_abs_err: None,
            dt_deviation: None,
            max_abs_err_halved: None,
            norm_drift: None,
            log10_ica: None,
            lzc_estimate: None,
            lz_estimate: None,
            decoupled_amplitude: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub t: f64,
    pub lambda: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Sweep(Vec<SweepRow>),
    Spectrum(Vec<SpectrumRow>),
}

/// Power-law level 0 crossing linear levels: `(couplings, slopes, r)`.
fn power_law_parts(m: &DiabaticModel) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let Profile::PowerLaw { r, .. } = m.diag[0] else { return None };
    let slopes = m.diag[1..]
        .iter()
        .map(|p| match *p {
            Profile::Linear { beta } => Some(beta),
            _ => None,
        })
        .collect::<Option<Vec<f64>>>()?;
    Some((m.couplings.clone(), slopes, r))
}

/// Two-state LZC and LZ estimates for a two-level diabatic model, with the
/// LZC parameters matched to the local crossing rate and curvature.
fn two_state_estimates(m: &DiabaticModel) -> lzc_core::Result<(Option<f64>, Option<f64>)> {
    if m.dim() != 2 {
        return Ok((None, None));
    }
    let g = m.couplings[0];
    match (m.diag[0], m.diag[1]) {
        (Profile::PowerLaw { q, r }, Profile::Linear { beta }) if q > 0.0 && beta > 0.0 => {
            // q / t^r - beta t crosses zero at t_c with rate (1 + r) beta
            // and second derivative r (1 + r) beta / t_c
            let t_c = (q / beta).powf(1.0 / (r + 1.0));
            let slope = 0.5 * (1.0 + r) * beta;
            let kappa = 2.0 * t_c / (r * (1.0 + r) * beta);
            let k = kappa * slope.powf(1.5);
            let lzc = two_state_survival(k * k, g, slope)?;
            let lz = (-std::f64::consts::PI * g * g / slope).exp();
            Ok((Some(lzc), Some(lz)))
        }
        (Profile::Quadratic { eps0, kappa }, Profile::Linear { beta }) if beta == 0.0 => {
            let (k2, b) = lzc_from_avoided_crossing(eps0, kappa)?;
            Ok((Some(two_state_survival(k2, g, -b)?), None))
        }
        _ => Ok((None, None)),
    }
}

/// Fills the analytic columns of `row` for `template`.
fn fill_analytic(row: &mut SweepRow, template: &Template, expected: Expected) -> Result<()> {
    match (expected, template) {
        (Expected::ClosedForm, Template::Lzc(m)) => row.analytic = Some(distribution(m)?.p),
        (Expected::ClosedForm, Template::Qubit(m)) => row.analytic = Some(distribution(&m.equivalent_lzc()?)?.p),
        (Expected::Ica, Template::Diabatic(m)) => {
            let (g, slopes, r) = power_law_parts(m)
                .ok_or_else(|| HarnessError::MissingAnalytic("a diabatic model that is not a power law".into()))?;
            row.analytic = Some(vec![ica_survival(&g, &slopes, r)?]);
            row.log10_ica = Some(ica_log10_survival(&g, &slopes, r)?);
        }
        (Expected::None, Template::Diabatic(m)) => {
            (row.lzc_estimate, row.lz_estimate) = two_state_estimates(m)?;
        }
        (Expected::None, _) => {}
        (e, _) => return Err(HarnessError::MissingAnalytic(format!("{e:?} on this model"))),
    }
    Ok(())
}

/// Largest difference over the entries both lists have.
fn error_against(analytic: &Option<Vec<f64>>, numeric: &[f64]) -> Option<f64> {
    let a = analytic.as_ref()?;
    let n = a.len().min(numeric.len());
    Some(max_abs_diff(&a[..n], &numeric[..n]))
}

/// Analytic prediction only, no propagation.
pub fn analytic_row(template: &Template, expected: Expected, sweep_value: f64) -> Result<SweepRow> {
    let mut row = SweepRow::new(sweep_value);
    fill_analytic(&mut row, template, expected)?;
    Ok(row)
}

/// Propagates `template` from level 0 and compares with its analytic
/// prediction.
pub fn run_point(template: &Template, expected: Expected, config: &PropagationConfig, sweep_value: f64) -> Result<SweepRow> {
    let mut row = analytic_row(template, expected, sweep_value)?;
    let failure = |source| HarnessError::PropagationFailure { value: sweep_value, source };
    let halved = match template {
        Template::Qubit(m) => {
            let r = qubit::run(m, config).map_err(failure)?;
            row.numeric = r.probabilities;
            row.norm_drift = Some(r.norm_drift);
            row.decoupled_amplitude = Some(r.decoupled_amplitude);
            if config.halving_check {
                let fine = qubit::run(m, &config.halved()).map_err(failure)?;
                row.decoupled_amplitude = Some(r.decoupled_amplitude.max(fine.decoupled_amplitude));
                Some(fine.probabilities)
            } else {
                None
            }
        }
        _ => {
            let builder = template.builder();
            let psi0 = initial_state(builder.dim(), 0)?;
            let r = propagate(builder, &psi0, config).map_err(failure)?;
            row.numeric = r.final_probabilities.p;
            row.norm_drift = Some(r.norm_drift);
            r.halved_probabilities.map(|d| d.p)
        }
    };
    if let Some(fine) = halved {
        row.dt_deviation = Some(max_abs_diff(&row.numeric, &fine));
        row.max_abs_err_halved = error_against(&row.analytic, &fine);
    }
    row.max_abs_err = error_against(&row.analytic, &row.numeric);
    Ok(row)
}

/// One row per grid value, in grid order, computed on the current rayon
/// pool.
pub fn sweep(
    template: &Template,
    path: &str,
    grid: &[f64],
    config: &PropagationConfig,
    expected: Expected,
) -> Result<Vec<SweepRow>> {
    let models = grid.iter().map(|&v| template.with(path, v)).collect::<Result<Vec<_>>>()?;
    models
        .par_iter()
        .zip(grid.par_iter())
        .map(|(m, &v)| run_point(m, expected, config, v))
        .collect()
}

/// Analytic predictions over a grid, without propagation.
pub fn analytic_sweep(template: &Template, path: &str, grid: &[f64], expected: Expected) -> Result<Vec<SweepRow>> {
    grid.iter()
        .map(|&v| analytic_row(&template.with(path, v)?, expected, v))
        .collect()
}

/// Sorted adiabatic energies at each time.
pub fn spectrum(builder: &dyn HamiltonianBuilder, times: &[f64]) -> Result<Vec<SpectrumRow>> {
    times
        .iter()
        .map(|&t| Ok(SpectrumRow { t, lambda: adiabatic_energies(&builder.at(t)?) }))
        .collect()
}

/// Runs a scenario on a pool of `jobs` workers (`0` picks the rayon
/// default).
pub fn run_scenario(scenario: &Scenario, jobs: usize) -> Result<Output> {
    scenario.validate()?;
    match scenario.kind {
        Kind::Spectrum => Ok(Output::Spectrum(spectrum(scenario.template.builder(), &scenario.grid)?)),
        Kind::Sweep => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| HarnessError::Pool(e.to_string()))?;
            let rows = pool.install(|| {
                sweep(&scenario.template, &scenario.path, &scenario.grid, &scenario.config, scenario.expected)
            })?;
            Ok(Output::Sweep(rows))
        }
    }
}
