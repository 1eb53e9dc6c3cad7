//! Classical chains: validation, spectra, hitting times, interpolation,
//! schedules and adiabatic sequences.

pub mod adiabatic;
pub mod chain;
pub mod generators;
pub mod hitting;
pub mod interpolation;
pub mod schedule;

pub use adiabatic::{adiabatic_sequence, adiabatic_steps, AdiabaticSequence, AdiabaticStage};
pub use chain::{check_marked, discriminant_of, MarkovChain};
pub use hitting::{
    hitting_time_classical, hitting_time_spectral, hitting_times_from_vertices, interpolated_hitting_time,
    interpolated_hitting_time_in, max_hitting_time,
};
pub use interpolation::InterpolatedFamily;
pub use schedule::{
    max_schedule_r, schedule_from_q, schedule_paper, InterpolationSchedule, ScheduleSource,
};
