//! Exact state-vector simulation of generalized interpolated quantum walks
//! on reversible Markov chains: spectral hitting times, Szegedy walk
//! operators, phase estimation, fast-forwarding, and the search and
//! qsampling drivers built on them.

pub mod circuit;
pub mod error;
pub mod linalg;
pub mod markov;
pub mod oracle;
pub mod qff;
pub mod qpe;
pub mod search;
pub mod walkspace;

pub use error::{Error, Result};
pub use linalg::SpectralData;
pub use markov::{InterpolatedFamily, InterpolationSchedule, MarkovChain, ScheduleSource};
pub use qff::{FlaggedState, QffConfig};
pub use qpe::QpeConfig;
pub use search::{Alg1Mode, Alg2Mode, CurveReport, CurveRow, HtChoice, RunReport, StepRecord};
pub use walkspace::{Completion, RegisterLayout, UnitaryOp, WalkOperator};
