//! Dual-engine simulator for Hamiltonian-generator agent dynamics.
//!
//! The classical engine integrates phase-space Hamiltonians with a symplectic
//! leapfrog; the quantum engine evolves density operators unitarily or under a
//! Lindblad dissipator. A shared generator catalogue (induction, reasoning,
//! recursion, learning, sensing, environment) can be built on either side, and
//! the `scenarios` module assembles the toy agent-environment comparisons.

pub mod classical;
pub mod error;
pub mod generator;
pub mod infogeo;
pub mod quantum;
pub mod record;
pub mod scenarios;
pub mod verify;
pub mod tensor;

pub use error::{Result, SimError};
