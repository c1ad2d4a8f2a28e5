//! The Landau-Zener-Coulomb model: an (N+1)-state time-dependent problem in
//! which level 0 has energy `k2 / t` and levels `1..=N` have energies
//! `beta_n t`, each coupled to level 0 by a constant `g_n`.
//!
//! The crate provides the closed-form transition probabilities, asymptotic
//! amplitude phases, Hamiltonian builders for related model families and a
//! norm-preserving Cayley propagator to check them against.

pub mod analytic;
pub mod config;
pub mod diabatic;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod matrix;
pub mod model;
pub mod propagator;
pub mod state;

pub use analytic::{
    asymptotic_amplitudes, distribution, survival_probability, transition_probability,
    AsymptoticAmplitude,
};
pub use config::{PropagationConfig, Readout};
pub use diabatic::{DiabaticModel, Profile};
pub use error::{Error, Result};
pub use hamiltonian::{HamiltonianBuilder, TwoQubitModel};
pub use matrix::HermitianMatrix;
pub use model::{LevelSpec, LzcModel, ModelError};
pub use propagator::{propagate, PropagationResult};
pub use state::{StateVector, TransitionDistribution};

pub use num_complex::Complex64;
