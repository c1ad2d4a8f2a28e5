//! Scenario registry, parameter sweeps and analytic-vs-numeric reports for
//! the LZC model, with CSV and JSON output.

pub mod compare;
pub mod emit;
pub mod error;
pub mod qubit;
pub mod scenario;
pub mod sweep;
pub mod template;

pub use compare::{compare, Report};
pub use emit::{emit, Columns, Format};
pub use error::{HarnessError, Result};
pub use scenario::{lookup, registry, Expected, Kind, Overrides, Scenario};
pub use sweep::{run_scenario, sweep, Output, SpectrumRow, SweepRow};
pub use template::Template;
