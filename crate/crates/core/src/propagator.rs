//! Fixed-step integration of `i dpsi/dt = H(t) psi` with the Cayley step
//! `(1 - i H dt/2)(1 + i H dt/2)^{-1}`, with `H` taken at the step midpoint.
//!
//! The step is unitary for any Hermitian `H` and any real `dt`, so stiff
//! early times near a singular level 0 energy need no special grid. Each
//! step factors a dense `(N+1) x (N+1)` complex matrix, `O(N^3)` work.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::{PropagationConfig, Readout, TimeGrid};
use crate::error::{Error, Result};
use crate::hamiltonian::HamiltonianBuilder;
use crate::linalg::{hermitian_eigen, solve_in_place, Eigen};
use crate::matrix::HermitianMatrix;
use crate::state::{l2_norm, max_abs_diff, StateVector, TransitionDistribution};

/// Largest accepted `| ||psi_end|| - 1 |`.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub final_state: StateVector,
    /// Level probabilities under `readout`.
    pub final_probabilities: TransitionDistribution,
    /// `|psi_j|^2` in the diabatic basis, whatever the readout.
    pub diabatic_probabilities: TransitionDistribution,
    pub readout: Readout,
    pub norm_drift: f64,
    pub steps: usize,
    /// Largest probability change when the run is repeated at `dt / 2`.
    pub halving_deviation: Option<f64>,
    /// Readout probabilities of the `dt / 2` rerun.
    pub halved_probabilities: Option<TransitionDistribution>,
}

/// Reusable scratch space for Cayley steps of one dimension.
#[derive(Debug, Clone)]
pub struct CayleyStepper {
    dim: usize,
    lhs: Vec<Complex64>,
    rhs: Vec<Complex64>,
}

impl CayleyStepper {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            lhs: vec![Complex64::new(0.0, 0.0); dim * dim],
            rhs: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// Advances `psi` in place by one step of length `dt` (either sign).
    pub fn step(&mut self, h: &HermitianMatrix, psi: &mut [Complex64], dt: f64) -> Result<()> {
        let n = self.dim;
        if h.dim() != n || psi.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: if h.dim() != n { h.dim() } else { psi.len() },
            });
        }
        let half = Complex64::new(0.0, 0.5 * dt);
        let entries = h.as_slice();
        for i in 0..n {
            let row = &entries[i * n..(i + 1) * n];
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &hij) in row.iter().enumerate() {
                acc += hij * psi[j];
                self.lhs[i * n + j] = half * hij;
            }
            self.lhs[i * n + i] += 1.0;
            self.rhs[i] = psi[i] - half * acc;
        }
        solve_in_place(&mut self.lhs, n, &mut self.rhs)?;
        psi.copy_from_slice(&self.rhs);
        Ok(())
    }
}

/// One Cayley step, approximating `exp(-i H dt) psi`.
pub fn cayley_step(h: &HermitianMatrix, psi: &StateVector, dt: f64) -> Result<StateVector> {
    let mut amps = psi.amplitudes().to_vec();
    CayleyStepper::new(h.dim()).step(h, &mut amps, dt)?;
    Ok(StateVector::from_unitary_image(amps))
}

/// Unit vector on `level`.
pub fn initial_state(dim: usize, level: usize) -> Result<StateVector> {
    StateVector::basis(dim, level)
}

fn check_grid(builder: &dyn HamiltonianBuilder, psi0: &StateVector, config: &PropagationConfig) -> Result<()> {
    if builder.singular_at_origin() {
        config.validate()?;
    } else {
        config.validate_regular()?;
    }
    if psi0.dim() != builder.dim() {
        return Err(Error::DimensionMismatch { expected: builder.dim(), got: psi0.dim() });
    }
    Ok(())
}

/// Scratch space for stepping one state along a grid.
struct Integrator {
    h: HermitianMatrix,
    stepper: CayleyStepper,
}

impl Integrator {
    fn new(dim: usize) -> Self {
        Self { h: HermitianMatrix::zeros(dim), stepper: CayleyStepper::new(dim) }
    }

    /// One step from `t0` to `t1`, either direction.
    fn step<F>(&mut self, builder: &dyn HamiltonianBuilder, psi: &mut [Complex64], t0: f64, t1: f64, observe: &mut F) -> Result<()>
    where
        F: FnMut(f64, &HermitianMatrix, f64, &[Complex64]),
    {
        let t_mid = 0.5 * (t0 + t1);
        builder.fill(t_mid, &mut self.h)?;
        observe(t_mid, &self.h, t1 - t0, psi);
        self.stepper.step(&self.h, psi, t1 - t0)
    }
}

/// Evolves `psi` over `steps` equal steps from `t_from` to `t_to`, calling
/// `observe(t_mid, H(t_mid), dt, psi)` before every step. Running the same
/// grid with `t_from` and `t_to` swapped inverts the evolution.
pub fn evolve<F>(
    builder: &dyn HamiltonianBuilder,
    psi: &mut [Complex64],
    t_from: f64,
    t_to: f64,
    steps: usize,
    mut observe: F,
) -> Result<()>
where
    F: FnMut(f64, &HermitianMatrix, f64, &[Complex64]),
{
    // nodes are laid out from the lower end so both directions share them
    let (lo, hi) = if t_from <= t_to { (t_from, t_to) } else { (t_to, t_from) };
    let node = |k: usize| if k == steps { hi } else { lo + (hi - lo) * k as f64 / steps as f64 };
    let mut integrator = Integrator::new(builder.dim());
    for k in 0..steps {
        let (t0, t1) = if t_from <= t_to { (node(k), node(k + 1)) } else { (node(steps - k), node(steps - k - 1)) };
        integrator.step(builder, psi, t0, t1, &mut observe)?;
    }
    Ok(())
}

/// Evolves `psi` forward along every step of `grid`.
pub fn evolve_grid<F>(builder: &dyn HamiltonianBuilder, psi: &mut [Complex64], grid: &TimeGrid, mut observe: F) -> Result<()>
where
    F: FnMut(f64, &HermitianMatrix, f64, &[Complex64]),
{
    let mut integrator = Integrator::new(builder.dim());
    let mut t0 = grid.node(0);
    for i in 1..=grid.steps() {
        let t1 = grid.node(i);
        integrator.step(builder, psi, t0, t1, &mut observe)?;
        t0 = t1;
    }
    Ok(())
}

/// Central-difference `dH/dt`.
pub fn hamiltonian_rate(builder: &dyn HamiltonianBuilder, t: f64) -> Result<HermitianMatrix> {
    let delta = 1e-4 * t.abs().max(1e-2);
    let (a, b) = (builder.at(t + delta)?, builder.at(t - delta)?);
    let n = builder.dim();
    let mut out = HermitianMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            out.set_pair(i, j, (a.get(i, j) - b.get(i, j)) / (2.0 * delta));
        }
    }
    Ok(out)
}

/// Level probabilities of `psi` at `t` under `readout`.
pub fn read_out(builder: &dyn HamiltonianBuilder, t: f64, psi: &[Complex64], readout: Readout) -> Result<Vec<f64>> {
    match readout {
        Readout::Diabatic => Ok(psi.iter().map(|a| a.norm_sqr()).collect()),
        Readout::Adiabatic => adiabatic_populations(&builder.at(t)?, psi),
        Readout::Superadiabatic => dressed_populations(&builder.at(t)?, &hamiltonian_rate(builder, t)?, psi),
    }
}

/// Final amplitudes, diabatic and read-out probabilities, norm drift and step count.
type RunOutcome = (Vec<Complex64>, Vec<f64>, Vec<f64>, f64, usize);

fn run_once<F>(
    builder: &dyn HamiltonianBuilder,
    psi0: &StateVector,
    config: &PropagationConfig,
    observe: F,
) -> Result<RunOutcome>
where
    F: FnMut(f64, &HermitianMatrix, f64, &[Complex64]),
{
    let mut psi = psi0.amplitudes().to_vec();
    let grid = config.grid(builder.singular_at_origin());
    evolve_grid(builder, &mut psi, &grid, observe)?;
    let drift = (l2_norm(&psi) - 1.0).abs();
    if drift > NORM_DRIFT_LIMIT {
        return Err(Error::NormDriftExceeded { drift, limit: NORM_DRIFT_LIMIT });
    }
    let diabatic: Vec<f64> = psi.iter().map(|a| a.norm_sqr()).collect();
    let probabilities = read_out(builder, config.t_end, &psi, config.readout)?;
    Ok((psi, diabatic, probabilities, drift, grid.steps()))
}

pub fn propagate(
    builder: &dyn HamiltonianBuilder,
    psi0: &StateVector,
    config: &PropagationConfig,
) -> Result<PropagationResult> {
    propagate_observed(builder, psi0, config, |_, _, _, _| {})
}

/// [`propagate`] with a per-step callback; see [`evolve`]. The callback only
/// sees the primary run, not the halving rerun.
pub fn propagate_observed<F>(
    builder: &dyn HamiltonianBuilder,
    psi0: &StateVector,
    config: &PropagationConfig,
    observe: F,
) -> Result<PropagationResult>
where
    F: FnMut(f64, &HermitianMatrix, f64, &[Complex64]),
{
    check_grid(builder, psi0, config)?;
    let (psi, diabatic, probabilities, norm_drift, steps) = run_once(builder, psi0, config, observe)?;
    let halved = if config.halving_check {
        Some(run_once(builder, psi0, &config.halved(), |_, _, _, _| {})?.2)
    } else {
        None
    };
    let halving_deviation = halved.as_ref().map(|fine| max_abs_diff(&probabilities, fine));
    Ok(PropagationResult {
        final_state: StateVector::from_unitary_image(psi),
        final_probabilities: TransitionDistribution::new(probabilities),
        diabatic_probabilities: TransitionDistribution::new(diabatic),
        readout: config.readout,
        norm_drift,
        steps,
        halving_deviation,
        halved_probabilities: halved.map(TransitionDistribution::new),
    })
}

/// Assigns each eigenvector the diabatic level it overlaps most, greedily by
/// decreasing weight. Returns `labels[k]` for eigenpair `k`.
pub fn label_eigenvectors(eigen: &Eigen) -> Vec<usize> {
    let n = eigen.values.len();
    let mut weights: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (k, v) in eigen.vectors.iter().enumerate() {
        for (j, c) in v.iter().enumerate() {
            weights.push((c.norm_sqr(), k, j));
        }
    }
    weights.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut labels = vec![usize::MAX; n];
    let mut taken = vec![false; n];
    for (_, k, j) in weights {
        if labels[k] == usize::MAX && !taken[j] {
            labels[k] = j;
            taken[j] = true;
        }
    }
    labels
}

/// Populations of the eigenstates of `h`, indexed by the diabatic level
/// each eigenstate is dominated by.
pub fn adiabatic_populations(h: &HermitianMatrix, psi: &[Complex64]) -> Result<Vec<f64>> {
    if h.dim() != psi.len() {
        return Err(Error::DimensionMismatch { expected: h.dim(), got: psi.len() });
    }
    let eigen = hermitian_eigen(h);
    let labels = label_eigenvectors(&eigen);
    let mut out = vec![0.0; psi.len()];
    for (k, v) in eigen.vectors.iter().enumerate() {
        let overlap: Complex64 = v.iter().zip(psi).map(|(a, b)| a.conj() * b).sum();
        out[labels[k]] = overlap.norm_sqr();
    }
    Ok(out)
}

/// Populations of the eigenstates of `h` dressed to first order in the
/// rate `hdot`:
/// `|l~> = |l> - i sum_k |k> <k|hdot|l> / (E_k - E_l)^2`,
/// indexed like [`adiabatic_populations`].
pub fn dressed_populations(h: &HermitianMatrix, hdot: &HermitianMatrix, psi: &[Complex64]) -> Result<Vec<f64>> {
    let n = psi.len();
    if h.dim() != n || hdot.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: if h.dim() != n { h.dim() } else { hdot.dim() } });
    }
    let eigen = hermitian_eigen(h);
    let labels = label_eigenvectors(&eigen);
    let scale = eigen.values.iter().fold(1.0f64, |m, e| m.max(e.abs()));
    let rate: Vec<Vec<Complex64>> = eigen.vectors.iter().map(|v| hdot.mul_vec(v)).collect();
    let mut out = vec![0.0; n];
    for (l, vl) in eigen.vectors.iter().enumerate() {
        let mut dressed = vl.clone();
        for (k, vk) in eigen.vectors.iter().enumerate() {
            let gap = eigen.values[k] - eigen.values[l];
            if k == l || gap.abs() <= 1e-12 * scale {
                continue;
            }
            let element: Complex64 = vk.iter().zip(&rate[l]).map(|(a, b)| a.conj() * b).sum();
            let c = Complex64::new(0.0, -1.0) * element / (gap * gap);
            for (d, a) in dressed.iter_mut().zip(vk) {
                *d += c * a;
            }
        }
        let norm = l2_norm(&dressed);
        let overlap: Complex64 = dressed.iter().zip(psi).map(|(a, b)| a.conj() * b).sum();
        out[labels[l]] = overlap.norm_sqr() / (norm * norm);
    }
    Ok(out)
}

/// Probability deviations that back an acceptance tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub probabilities: Vec<f64>,
    /// Largest change when `dt` is halved.
    pub dt_deviation: f64,
    /// Largest change when the run is extended to `2 t_end` at the same
    /// `dt`.
    pub tail_deviation: f64,
}

pub fn convergence_report(
    builder: &dyn HamiltonianBuilder,
    psi0: &StateVector,
    config: &PropagationConfig,
) -> Result<ConvergenceReport> {
    let base = propagate(builder, psi0, &config.with_halving(true))?;
    let longer = PropagationConfig {
        t_end: 2.0 * config.t_end - config.t_start,
        halving_check: false,
        ..*config
    };
    let tail = propagate(builder, psi0, &longer)?;
    Ok(ConvergenceReport {
        dt_deviation: base.halving_deviation.unwrap_or(0.0),
        tail_deviation: base.final_probabilities.max_abs_diff(&tail.final_probabilities),
        probabilities: base.final_probabilities.p,
    })
}

/// Accumulates, per adiabatic state, the phase error of the Cayley map
/// (`2 atan(E dt / 2)` instead of `E dt`) so that long runs can be compared
/// against exact asymptotic phases. Tracking starts at `from`, after which
/// the energy ordering of the adiabatic states must no longer change.
#[derive(Debug, Clone)]
pub struct PhaseTracker {
    from: f64,
    correction: Vec<f64>,
}

impl PhaseTracker {
    pub fn new(dim: usize, from: f64) -> Self {
        Self { from, correction: vec![0.0; dim] }
    }

    pub fn observe(&mut self, t_mid: f64, h: &HermitianMatrix, dt: f64, _psi: &[Complex64]) {
        if t_mid < self.from {
            return;
        }
        let values = hermitian_eigen(h).values;
        for (c, e) in self.correction.iter_mut().zip(values) {
            *c += e * dt - 2.0 * (0.5 * e * dt).atan();
        }
    }

    /// Adiabatic-basis amplitudes of `psi` with the accumulated discretization
    /// phase removed, indexed by dominant diabatic level. Eigenvectors are
    /// phased so their dominant component is real and positive.
    pub fn corrected_amplitudes(&self, h_end: &HermitianMatrix, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        if h_end.dim() != psi.len() || psi.len() != self.correction.len() {
            return Err(Error::DimensionMismatch { expected: self.correction.len(), got: psi.len() });
        }
        let eigen = hermitian_eigen(h_end);
        let labels = label_eigenvectors(&eigen);
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (k, v) in eigen.vectors.iter().enumerate() {
            let lead = v[labels[k]];
            let gauge = if lead.norm() > 0.0 { lead.conj() / lead.norm() } else { Complex64::new(1.0, 0.0) };
            let overlap: Complex64 = v.iter().zip(psi).map(|(a, b)| (a * gauge).conj() * b).sum();
            out[labels[k]] = overlap * Complex64::from_polar(1.0, -self.correction[k]);
        }
        Ok(out)
    }
}
