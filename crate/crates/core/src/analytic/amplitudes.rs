//! Asymptotic amplitudes at large `t` for evolution that starts on level 0
//! with `a(t) ~ t^{-i k2}` as `t -> 0+`.
//!
//! With `y_n = g_n^2 / (2 beta_n)`:
//!
//! ```text
//! a(t)   ~ |a| exp(i Phi_0) t^{i (-k2 + 2 sum y_n)}
//! b_j(t) ~ |b_j| exp(i Phi_j) exp(-i beta_j t^2 / 2) t^{-2 i y_j}
//!
//! Phi_0 = arg G(1/2 + i k2/2 - i sum y_n) - arg G(1/2 + i k2/2)
//!         + sum_n y_n ln(|beta_n| / 2)
//! Phi_j = c_j + arg G(i y_j) - arg G(1/2 + i k2/2)
//!         + sum_{n != j} y_n (ln|beta_n - beta_j| - ln|beta_j|)
//!         + (k2/2 - y_j) ln(|beta_j| / 2)
//! ```
//!
//! where `c_j = pi/4` for `beta_j > 0` and `3 pi/4` for `beta_j < 0`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{distribution, gamma::log_gamma_arg};
use crate::error::Result;
use crate::model::LzcModel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticAmplitude {
    pub level: usize,
    pub modulus: f64,
    /// `None` for an uncoupled level, whose amplitude vanishes identically.
    pub phase_const: Option<f64>,
    /// Coefficient of `ln t` in the log of the amplitude tail.
    pub log_t_exponent: Complex64,
    /// Coefficient of `t^2` in the tail phase.
    pub quadratic_phase: f64,
}

impl AsymptoticAmplitude {
    /// Tail phase at time `t`, or `None` when the amplitude is identically
    /// zero.
    pub fn phase_at(&self, t: f64) -> Option<f64> {
        self.phase_const
            .map(|c| c + self.quadratic_phase * t * t + self.log_t_exponent.im * t.ln())
    }
}

pub fn asymptotic_amplitudes(model: &LzcModel) -> Result<Vec<AsymptoticAmplitude>> {
    let probabilities = distribution(model)?;
    let k2 = model.k2;
    let y: Vec<f64> = model.levels.iter().map(|l| l.g * l.g / (2.0 * l.beta)).collect();
    let y_sum: f64 = y.iter().sum();
    let coulomb_arg = log_gamma_arg(Complex64::new(0.5, 0.5 * k2))?;

    let mut out = Vec::with_capacity(model.dim());
    let phi0 = log_gamma_arg(Complex64::new(0.5, 0.5 * k2 - y_sum))? - coulomb_arg
        + model
            .levels
            .iter()
            .zip(&y)
            .map(|(l, yn)| yn * (l.beta.abs() / 2.0).ln())
            .sum::<f64>();
    out.push(AsymptoticAmplitude {
        level: 0,
        modulus: probabilities.p[0].sqrt(),
        phase_const: Some(phi0),
        log_t_exponent: Complex64::new(0.0, -k2 + 2.0 * y_sum),
        quadratic_phase: 0.0,
    });

    for (i, level) in model.levels.iter().enumerate() {
        let yj = y[i];
        let bj = level.beta;
        let phase_const = if level.g == 0.0 {
            None
        } else {
            let offset = if bj > 0.0 { FRAC_PI_4 } else { 3.0 * FRAC_PI_4 };
            let cross: f64 = model
                .levels
                .iter()
                .zip(&y)
                .enumerate()
                .filter(|&(n, _)| n != i)
                .map(|(_, (l, yn))| yn * ((l.beta - bj).abs().ln() - bj.abs().ln()))
                .sum();
            Some(
                offset + log_gamma_arg(Complex64::new(0.0, yj))? - coulomb_arg
                    + cross
                    + (0.5 * k2 - yj) * (bj.abs() / 2.0).ln(),
            )
        };
        out.push(AsymptoticAmplitude {
            level: i + 1,
            modulus: probabilities.p[i + 1].sqrt(),
            phase_const,
            log_t_exponent: Complex64::new(0.0, -2.0 * yj),
            quadratic_phase: -bj / 2.0,
        });
    }
    Ok(out)
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}
