//! Registers, state vectors and the Szegedy walk operator.

pub mod eigen;
pub mod layout;
pub mod operator;

pub use eigen::{PlaneCoordinates, WalkEigensystem};
pub use layout::{embed_system, RegisterLayout, WalkState};
pub use operator::{Completion, UnitaryOp, WalkOperator};
