//! Experiment runner: instance generation, JSON experiment specs, and
//! result files with reproducibility sidecars.

pub mod error;
pub mod run;
pub mod spec;

pub use error::{CliError, ErrorRecord, Result};
pub use run::{run, run_batch, RunOutcome};
pub use spec::{generate, parse_config, Algorithm, ExperimentSpec, Format, GeneratorSpec, OutputSpec};
