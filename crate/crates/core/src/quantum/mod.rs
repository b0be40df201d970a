//! Quantum density-operator engine: clock-register recursion, unitary and
//! Lindblad evolution, projective measurement, the operator generator
//! catalogue, and the induction cost functional.

pub mod clock;
pub mod evolve;
pub mod generators;
pub mod induction;
pub mod measure;

pub use clock::{feynman_kitaev, history_state, ClockForm, HistoryStateSpec};
pub use evolve::{
    evolve_unitary, lindblad_evolve, validate_lindblad_state, LindbladModel, LindbladRun,
};
pub use generators::build_quantum_generator;
pub use induction::{
    bloch_state, disturbance_witness, induction_cost, induction_gradient_flow, InductionFlow,
    InductionFlowConfig,
};
pub use measure::{projective_measure, sample_outcome, validate_projectors, MeasurementRecord};
