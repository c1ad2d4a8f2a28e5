//! Propagation of the two-qubit realisation, read out in the three-state
//! block that carries the LZC dynamics.

use lzc_core::hamiltonian::{project_qubit_state, qubit_decoupled_state, qubit_isometry, reduce_qubit_basis};
use lzc_core::propagator::{adiabatic_populations, dressed_populations, evolve_grid, hamiltonian_rate};
use lzc_core::{Complex64, HamiltonianBuilder, PropagationConfig, Readout, TwoQubitModel};

#[derive(Debug, Clone, PartialEq)]
pub struct QubitRun {
    /// Probabilities of the reduced levels, ordered as the equivalent LZC
    /// model.
    pub probabilities: Vec<f64>,
    /// Largest `|<decoupled|psi>|` seen before any step and at the end.
    pub decoupled_amplitude: f64,
    pub norm_drift: f64,
}

/// The reduced level 0 written in the product basis.
pub fn initial_state() -> Vec<Complex64> {
    let v = qubit_isometry();
    (0..4).map(|row| v[row * 3]).collect()
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn run(model: &TwoQubitModel, config: &PropagationConfig) -> lzc_core::Result<QubitRun> {
    config.validate()?;
    let decoupled = qubit_decoupled_state();
    let mut psi = initial_state();
    let mut leak = 0.0f64;
    let grid = config.grid(model.singular_at_origin());
    evolve_grid(model, &mut psi, &grid, |_, _, _, state| {
        leak = leak.max(overlap(&decoupled, state).norm());
    })?;
    leak = leak.max(overlap(&decoupled, &psi).norm());
    let norm_drift = (psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() - 1.0).abs();
    let reduced = project_qubit_state(&psi)?;
    let probabilities = match config.readout {
        Readout::Diabatic => reduced.iter().map(|a| a.norm_sqr()).collect(),
        Readout::Adiabatic => adiabatic_populations(&reduce_qubit_basis(&model.at(config.t_end)?)?, &reduced)?,
        Readout::Superadiabatic => {
            let h = reduce_qubit_basis(&model.at(config.t_end)?)?;
            let hdot = reduce_qubit_basis(&hamiltonian_rate(model, config.t_end)?)?;
            dressed_populations(&h, &hdot, &reduced)?
        }
    };
    Ok(QubitRun { probabilities, decoupled_amplitude: leak, norm_drift })
}
