//! Semiclassical simulation of a bright squeezed (or coherent) pulse
//! interacting dispersively with a three-level matter qubit in a high-Q
//! cavity.
//!
//! The crate integrates the optical Bloch system for the atom, the cavity
//! field amplitude and the rotated qubit coherences, derives the pulse phase
//! shift and qubit fidelity, and provides closed-form far-detuned
//! approximations plus the sweep and phase-matching drivers used to map out
//! parameter dependences.

pub mod approx;
pub mod bloch;
pub mod error;
pub mod experiment;
pub mod model;
pub mod observables;

pub use approx::{approx_phase, approx_report, approx_sigma_channel, ApproxReport};
pub use bloch::{
    initial_state, integrate, reference_run, BlochState, IntegratorSettings, Trajectory,
};
pub use error::{Error, Result};
pub use model::{PulseShape, SqueezeTransform, SystemParams};
pub use observables::{normalized_fidelity, RunReport};
