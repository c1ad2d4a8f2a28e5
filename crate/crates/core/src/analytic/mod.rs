//! Closed-form transition probabilities of the LZC model, their limits and
//! the independent-crossing estimate for power-law level 0 energies.

mod amplitudes;
pub mod gamma;

use std::f64::consts::{LN_10, PI};

pub use amplitudes::{asymptotic_amplitudes, wrap_phase, AsymptoticAmplitude};
pub use gamma::{ln_gamma, log_gamma_abs, log_gamma_arg};

use crate::error::{Error, Result};
use crate::model::LzcModel;
use crate::state::TransitionDistribution;

/// `pi * k2` beyond which `exp(-pi k2)` is reported as an exact zero.
pub const COULOMB_UNDERFLOW_EXPONENT: f64 = 700.0;

/// `exp(-pi k2)`, the weight of the branch that passes behind the Coulomb
/// barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombFactor {
    pub value: f64,
    /// Set when `pi k2` is so large the factor was replaced by zero.
    pub underflow: bool,
}

pub fn coulomb_factor(k2: f64) -> CoulombFactor {
    let exponent = PI * k2;
    if exponent > COULOMB_UNDERFLOW_EXPONENT {
        CoulombFactor { value: 0.0, underflow: true }
    } else {
        CoulombFactor { value: (-exponent).exp(), underflow: false }
    }
}

/// `exp(-pi g^2 / |beta|)`.
pub fn lz_factor(g: f64, beta: f64) -> Result<f64> {
    if beta == 0.0 {
        return Err(Error::ZeroSlope);
    }
    Ok((-PI * g * g / beta.abs()).exp())
}

/// Product of LZ factors over levels whose slope satisfies `keep`, in level
/// order. Empty products are 1.
fn lz_product(model: &LzcModel, keep: impl Fn(f64) -> bool) -> f64 {
    model
        .levels
        .iter()
        .filter(|l| keep(l.beta))
        .fold(1.0, |acc, l| acc * (-PI * l.g * l.g / l.beta.abs()).exp())
}

/// Probability to remain on level 0.
pub fn survival_probability(model: &LzcModel) -> Result<f64> {
    model.check()?;
    let e = coulomb_factor(model.k2).value;
    let positive = lz_product(model, |b| b > 0.0);
    let negative = lz_product(model, |b| b < 0.0);
    Ok((positive + e * negative) / (1.0 + e))
}

/// `P_{0 -> j}` for `1 <= j <= N`.
pub fn transition_probability(model: &LzcModel, j: usize) -> Result<f64> {
    model.check()?;
    if j == 0 || j > model.n_levels() {
        return Err(Error::IndexOutOfRange { index: j, len: model.n_levels() });
    }
    Ok(transition_unchecked(model, j, coulomb_factor(model.k2).value))
}

fn transition_unchecked(model: &LzcModel, j: usize, e: f64) -> f64 {
    let level = model.levels[j - 1];
    let pj = (-PI * level.g * level.g / level.beta.abs()).exp();
    if level.beta > 0.0 {
        lz_product(model, |b| b > level.beta) * (1.0 - pj) / (1.0 + e)
    } else {
        lz_product(model, |b| b < level.beta) * (1.0 - pj) * e / (1.0 + e)
    }
}

pub fn distribution(model: &LzcModel) -> Result<TransitionDistribution> {
    let survival = survival_probability(model)?;
    let e = coulomb_factor(model.k2).value;
    let mut p = Vec::with_capacity(model.dim());
    p.push(survival);
    p.extend((1..=model.n_levels()).map(|j| transition_unchecked(model, j, e)));
    Ok(TransitionDistribution::new(p))
}

/// Survival probability of the two-state model. Evaluated with the same
/// floating-point operations as [`survival_probability`] on the one-level
/// model, so the two agree exactly.
pub fn two_state_survival(k2: f64, g: f64, beta: f64) -> Result<f64> {
    let p = lz_factor(g, beta)?;
    let e = coulomb_factor(k2).value;
    if beta > 0.0 {
        Ok((1.0 * p + e * 1.0) / (1.0 + e))
    } else {
        Ok((1.0 + e * (1.0 * p)) / (1.0 + e))
    }
}

/// The `k -> infinity` limit of the survival probability: the product of LZ
/// factors over the positive-slope levels.
pub fn demkov_osherov_survival(model: &LzcModel) -> Result<f64> {
    model.check()?;
    Ok(lz_product(model, |b| b > 0.0))
}

/// Coupling-independent lower bound on the survival probability when all
/// slopes share a sign.
pub fn saturation_bound(model: &LzcModel) -> Result<f64> {
    model.check()?;
    let e = coulomb_factor(model.k2).value;
    if model.levels.iter().all(|l| l.beta > 0.0) {
        Ok(e / (1.0 + e))
    } else if model.levels.iter().all(|l| l.beta < 0.0) {
        Ok(1.0 / (1.0 + e))
    } else {
        Err(Error::MixedSlopeSigns)
    }
}

/// `survival_probability - saturation_bound`, computed without the
/// cancellation of that difference. Strictly positive for finite couplings
/// whenever it does not underflow.
pub fn saturation_margin(model: &LzcModel) -> Result<f64> {
    saturation_bound(model)?;
    let e = coulomb_factor(model.k2).value;
    if model.levels.iter().all(|l| l.beta > 0.0) {
        Ok(lz_product(model, |b| b > 0.0) / (1.0 + e))
    } else {
        Ok(e * lz_product(model, |b| b < 0.0) / (1.0 + e))
    }
}

/// Exponent `2 pi sum g_i^2 / |b_i - beta_i|` of the independent-crossing
/// estimate for level 0 energy `q / t^r`, where `b_i = -r beta_i` is the
/// slope of level 0 at its crossing with level `i`.
fn ica_exponent(couplings: &[f64], slopes: &[f64], r: f64) -> Result<f64> {
    if couplings.len() != slopes.len() {
        return Err(Error::DimensionMismatch { expected: slopes.len(), got: couplings.len() });
    }
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("power r must be positive, got {r}")));
    }
    if let Some(&b) = slopes.iter().find(|&&b| !(b > 0.0)) {
        return Err(Error::NonPositiveSlope(b));
    }
    Ok(couplings
        .iter()
        .zip(slopes)
        .map(|(g, beta)| {
            let b0 = -r * beta;
            2.0 * PI * g * g / (b0 - beta).abs()
        })
        .sum())
}

pub fn ica_survival(couplings: &[f64], slopes: &[f64], r: f64) -> Result<f64> {
    ica_exponent(couplings, slopes, r).map(|x| (-x).exp())
}

/// `log10` of [`ica_survival`], finite even where the probability itself
/// underflows.
pub fn ica_log10_survival(couplings: &[f64], slopes: &[f64], r: f64) -> Result<f64> {
    ica_exponent(couplings, slopes, r).map(|x| 0.0 - x / LN_10)
}

/// Minimal gap `eps0` and curvature parameter `kappa` of the avoided
/// crossing `|beta| t + k2 / t` seen by a negative-slope two-state model.
pub fn avoided_crossing_params(k2: f64, beta: f64) -> Result<(f64, f64)> {
    if !(beta < 0.0) {
        return Err(Error::InvalidSign(format!("beta must be negative, got {beta}")));
    }
    if !(k2 > 0.0) {
        return Err(Error::InvalidSign(format!("k2 must be positive, got {k2}")));
    }
    let k = k2.sqrt();
    let b = beta.abs();
    Ok((2.0 * k * b.sqrt(), k / b.powf(1.5)))
}

/// Inverse of [`avoided_crossing_params`]: returns `(k2, |beta|)`.
pub fn lzc_from_avoided_crossing(eps0: f64, kappa: f64) -> Result<(f64, f64)> {
    if !(eps0 > 0.0 && kappa > 0.0) {
        return Err(Error::InvalidSign(format!(
            "eps0 and kappa must be positive, got {eps0}, {kappa}"
        )));
    }
    let b = (eps0 / (2.0 * kappa)).sqrt();
    let k = eps0 / (2.0 * b.sqrt());
    Ok((k * k, b))
}
