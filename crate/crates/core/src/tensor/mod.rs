//! Dense complex linear algebra substrate: matrices, tensor products,
//! partial traces, Hermitian eigendecomposition, and matrix exponentials.

pub mod density;
pub mod hermitian;
pub mod matrix;
pub mod pauli;

pub use density::{partial_trace, partial_trace_matrix, DensityOperator};
pub use hermitian::{
    apply_spectral_function, commutator, commutator_norm, exp_minus_iht, herm_eig,
    min_eigenvalue, HermitianOperator,
};
pub use matrix::{commutator_matrices, kron, kron_all, ComplexMatrix, CVector, C64};
