//! Classical phase-space engine: Hamiltonian functions on `(q, p)`,
//! symplectic integration, numerical Poisson brackets, Liouville-volume
//! tracking, and the classical generator catalogue.

pub mod bracket;
pub mod hamiltonian;
pub mod integrate;
pub mod state;

pub use bracket::poisson_bracket;
pub use hamiltonian::{
    build_classical_generator, gaussian_kernel, kinetic_energy, reasoning_penalty_exact,
    ClassicalHamiltonian, SeparableStructure, TermFn, DEFAULT_SMOOTHING_WIDTH,
};
pub use integrate::{
    ensemble_entropy_series, evolve_classical, leapfrog_step, liouville_jacobian,
};
pub use state::PhaseSpaceState;
