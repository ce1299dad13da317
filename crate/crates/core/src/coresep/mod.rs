//! Core feasibility and additive separability.

mod polyhedron;
mod separability;
pub mod simplex;

pub use polyhedron::{
    core_contains, core_feasible, core_system, verify_certificate, Certificate, CoreConstraint,
    CoreOutcome, CoreSystem,
};
pub use separability::{separability_test, separating_variant, Separability, SeparatingFamily};
