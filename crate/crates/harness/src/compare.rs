//! Pass/fail reports for a sweep against its analytic column.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::sweep::SweepRow;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub tol: f64,
    pub max_abs_err: f64,
    pub worst: SweepRow,
    /// The worst row's `dt` halving changes it by at least half its error,
    /// so the grid rather than the model is the likely culprit.
    pub dt_dominant: bool,
}

pub fn compare(rows: &[SweepRow], tol: f64) -> Result<Report> {
    let mut worst: Option<(&SweepRow, f64)> = None;
    for row in rows {
        let err = row
            .max_abs_err
            .ok_or_else(|| HarnessError::MissingAnalytic(format!("row at {}", row.sweep_value)))?;
        // NaN errors must count as failures
        if worst.is_none_or(|(_, w)| !(err <= w)) {
            worst = Some((row, err));
        }
    }
    let (worst, max_abs_err) = worst.ok_or_else(|| HarnessError::MissingAnalytic("an empty sweep".into()))?;
    let dt_dominant = worst.dt_deviation.is_some_and(|d| d >= 0.5 * max_abs_err && d > 0.0);
    Ok(Report { passed: max_abs_err <= tol, tol, max_abs_err, worst: worst.clone(), dt_dominant })
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: max |analytic - numeric| = {:.3e} (tol {:.3e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.max_abs_err,
            self.tol
        )?;
        let w = &self.worst;
        write!(f, "worst row: sweep_value = {}", w.sweep_value)?;
        if let Some(d) = w.dt_deviation {
            write!(f, ", dt_deviation = {d:.3e}")?;
        }
        if let Some(e) = w.max_abs_err_halved {
            write!(f, ", error at dt/2 = {e:.3e}")?;
        }
        if let Some(d) = w.norm_drift {
            write!(f, ", norm_drift = {d:.1e}")?;
        }
        writeln!(f)?;
        if self.dt_dominant {
            writeln!(f, "dt_deviation dominates the error: refine the time step")?;
        }
        Ok(())
    }
}
