use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of steps a single run may take.
pub const MAX_STEPS: f64 = 2e9;

/// How the final state is turned into level probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Readout {
    /// `|psi_j|^2` in the diabatic basis at `t_end`.
    Diabatic,
    /// Populations of the instantaneous eigenstates of `H(t_end)`, each
    /// labelled by the diabatic level it is dominated by. Removes the
    /// oscillating `g / (beta t)` admixture that decays only as `1/t`.
    Adiabatic,
    /// As `Adiabatic`, with each eigenstate dressed to first order in
    /// `dH/dt`. Also removes the remaining admixture of order
    /// `<k|dH/dt|l> / (E_k - E_l)^2`, whose phase at `t_end` depends on `dt`.
    #[default]
    Superadiabatic,
}

/// Fixed time grid for a propagation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    pub t_start: f64,
    pub t_end: f64,
    pub dt: f64,
    /// Re-run at `dt / 2` and record the largest probability change.
    pub halving_check: bool,
    #[serde(default)]
    pub readout: Readout,
    /// For Hamiltonians singular at `t = 0`, steps grow geometrically as
    /// `dt * t / grade_until` until `grade_until`, keeping `E(t) * step`
    /// bounded where `E ~ 1/t`. Zero turns this off.
    #[serde(default = "default_grade_until")]
    pub grade_until: f64,
}

fn default_grade_until() -> f64 {
    1.0
}

/// Node times of one run: a geometric run from `t_start` to `switch`, then
/// equal steps to `t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_start: f64,
    pub ratio: f64,
    pub graded_steps: usize,
    pub switch: f64,
    pub uniform_steps: usize,
    pub t_end: f64,
}

impl TimeGrid {
    pub fn steps(&self) -> usize {
        self.graded_steps + self.uniform_steps
    }

    /// Time of node `i`, `0 <= i <= steps()`.
    pub fn node(&self, i: usize) -> f64 {
        if i <= self.graded_steps {
            if i == self.graded_steps {
                self.switch
            } else {
                self.t_start * self.ratio.powi(i as i32)
            }
        } else if i == self.steps() {
            self.t_end
        } else {
            let k = (i - self.graded_steps) as f64;
            self.switch + k * (self.t_end - self.switch) / self.uniform_steps as f64
        }
    }
}

impl Default for PropagationConfig {
    fn default() -> Self {
        Self {
            t_start: 1e-4,
            t_end: 400.0,
            dt: 1e-3,
            halving_check: false,
            readout: Readout::default(),
            grade_until: default_grade_until(),
        }
    }
}

impl PropagationConfig {
    pub fn new(t_start: f64, t_end: f64, dt: f64) -> Result<Self> {
        let config = Self {
            t_start,
            t_end,
            dt,
            ..Self::default()
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_halving(mut self, on: bool) -> Self {
        self.halving_check = on;
        self
    }

    pub fn with_readout(mut self, readout: Readout) -> Self {
        self.readout = readout;
        self
    }

    /// Checks the grid. A nonpositive `t_start` is rejected here; it is
    /// only admissible through [`Self::validate_regular`] for Hamiltonians
    /// that stay finite at `t = 0`.
    pub fn validate(&self) -> Result<()> {
        self.validate_regular()?;
        if self.t_start <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "t_start must be positive, got {}",
                self.t_start
            )));
        }
        Ok(())
    }

    pub fn validate_regular(&self) -> Result<()> {
        if !(self.t_start.is_finite() && self.t_end.is_finite() && self.dt.is_finite()) {
            return Err(Error::InvalidConfig("non-finite grid parameter".into()));
        }
        if self.t_end <= self.t_start {
            return Err(Error::InvalidConfig(format!(
                "t_end ({}) must exceed t_start ({})",
                self.t_end, self.t_start
            )));
        }
        if self.dt <= 0.0 {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.grade_until >= 0.0 && self.grade_until.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "grade_until must be finite and nonnegative, got {}",
                self.grade_until
            )));
        }
        let mut steps = (self.t_end - self.t_start) / self.dt;
        if self.t_start > 0.0 && self.grade_until > self.t_start {
            steps += self.grade_until / self.dt * (self.grade_until / self.t_start).ln();
        }
        if steps > MAX_STEPS {
            return Err(Error::GridTooLarge(steps));
        }
        Ok(())
    }

    /// Number of steps; the step is shrunk slightly so the grid ends
    /// exactly at `t_end`.
    pub fn steps(&self) -> usize {
        (((self.t_end - self.t_start) / self.dt).round() as usize).max(1)
    }

    pub fn step_size(&self) -> f64 {
        (self.t_end - self.t_start) / self.steps() as f64
    }

    /// The grid for a Hamiltonian that is (`singular = true`) or is not
    /// singular at `t = 0`. Only the singular case is graded.
    pub fn grid(&self, singular: bool) -> TimeGrid {
        let graded = singular && self.t_start > 0.0 && self.grade_until > self.t_start;
        let (ratio, graded_steps, switch) = if graded {
            let ratio = 1.0 + self.dt / self.grade_until;
            let limit = self.grade_until.min(self.t_end);
            let mut n = ((limit / self.t_start).ln() / ratio.ln()).floor().max(0.0) as usize;
            while n > 0 && self.t_start * ratio.powi(n as i32) > limit {
                n -= 1;
            }
            (ratio, n, self.t_start * ratio.powi(n as i32))
        } else {
            (1.0, 0, self.t_start)
        };
        let uniform_steps = (((self.t_end - switch) / self.dt).round() as usize).max(1);
        TimeGrid { t_start: self.t_start, ratio, graded_steps, switch, uniform_steps, t_end: self.t_end }
    }

    pub fn halved(&self) -> Self {
        Self {
            dt: self.dt / 2.0,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_grids() {
        assert!(PropagationConfig::new(0.0, 1.0, 0.1).is_err());
        assert!(PropagationConfig::new(1.0, 1.0, 0.1).is_err());
        assert!(PropagationConfig::new(1.0, 2.0, -0.1).is_err());
        assert!(matches!(
            PropagationConfig::new(1e-4, 1e6, 1e-6),
            Err(Error::GridTooLarge(_))
        ));
    }

    #[test]
    fn grid_lands_on_t_end() {
        let c = PropagationConfig::new(1e-4, 400.0, 1e-3).unwrap();
        assert_eq!(c.steps(), 400_000);
        assert!((c.t_start + c.steps() as f64 * c.step_size() - 400.0).abs() < 1e-9);
        assert_eq!(c.halved().steps(), 2 * c.steps());
    }

    #[test]
    fn graded_grid_joins_uniform_grid() {
        let c = PropagationConfig::new(1e-4, 400.0, 1e-3).unwrap();
        let g = c.grid(true);
        assert!(g.graded_steps > 9000 && g.graded_steps < 9300, "{}", g.graded_steps);
        assert!(g.switch <= 1.0 && g.switch > 1.0 / (1.0 + 1e-3));
        assert_eq!(g.node(0), 1e-4);
        assert_eq!(g.node(g.steps()), 400.0);
        for i in 1..=g.steps() {
            let h = g.node(i) - g.node(i - 1);
            assert!(h > 0.0 && h <= 1.0001e-3, "step {i}: {h}");
        }
        // step over time stays at dt / grade_until on the graded part
        let i = g.graded_steps / 2;
        assert!(((g.node(i + 1) - g.node(i)) / g.node(i) - 1e-3).abs() < 1e-12);
        assert_eq!(c.grid(false).graded_steps, 0);
        let flat = PropagationConfig { grade_until: 0.0, ..c };
        assert_eq!(flat.grid(true).graded_steps, 0);
        assert_eq!(flat.grid(true).steps(), 400_000);
        let late = PropagationConfig::new(2.0, 10.0, 1e-2).unwrap();
        assert_eq!(late.grid(true).graded_steps, 0);
    }

    #[test]
    fn regular_grids_may_start_before_zero() {
        let c = PropagationConfig {
            t_start: -400.0,
            t_end: 400.0,
            ..Default::default()
        };
        assert!(c.validate_regular().is_ok());
        assert!(c.validate().is_err());
    }
}
