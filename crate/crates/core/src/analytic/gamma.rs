//! Complex log-gamma via the Lanczos approximation (g = 7, 9 terms).
//!
//! The branch is the standard one: analytic continuation from the positive
//! real axis with `ln_gamma(z + 1) = ln_gamma(z) + ln z` (principal `ln`)
//! holding everywhere off the poles. Arguments with `Re z < 1/2` are shifted
//! up with that recurrence, which keeps the branch without the bookkeeping a
//! reflection formula would need.

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
/// ln(sqrt(2 pi))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Gamma(z)` on the standard branch.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::PoleOfGamma { re: z.re, im: z.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter(format!("non-finite gamma argument {z}")));
    }
    if z.re >= 0.5 {
        return Ok(lanczos(z));
    }
    let shift = (0.5 - z.re).ceil() as usize;
    let mut correction = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        correction += (z + k as f64).ln();
    }
    Ok(lanczos(z + shift as f64) - correction)
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Continuous argument of `Gamma(z)`, i.e. `Im ln Gamma(z)`.
pub fn log_gamma_arg(z: Complex64) -> Result<f64> {
    ln_gamma(z).map(|v| v.im)
}

/// `ln |Gamma(z)|`.
pub fn log_gamma_abs(z: Complex64) -> Result<f64> {
    ln_gamma(z).map(|v| v.re)
}
