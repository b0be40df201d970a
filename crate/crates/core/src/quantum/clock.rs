//! Clock-register encoding of recursive computation: the history-state
//! Hamiltonian on clock (x) data and its ground state.

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};
use crate::tensor::matrix::EIG_DIMENSION_CAP;
use crate::tensor::{kron, ComplexMatrix, CVector, HermitianOperator};

/// Unitary gate sequence plus initial state and halt projector.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryStateSpec {
    pub unitaries: Vec<ComplexMatrix>,
    pub initial_state: CVector,
    pub halt_projector: HermitianOperator,
}

impl HistoryStateSpec {
    pub fn new(
        unitaries: Vec<ComplexMatrix>,
        initial_state: CVector,
        halt_projector: HermitianOperator,
    ) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(SimError::InvalidConfig(
                "at least one unitary required (L >= 1)".into(),
            ));
        }
        let data_dim = initial_state.len();
        let steps = unitaries.len();
        if (steps + 1).saturating_mul(data_dim) > EIG_DIMENSION_CAP {
            return Err(SimError::DimensionCapExceeded {
                actual: (steps + 1) * data_dim,
                cap: EIG_DIMENSION_CAP,
            });
        }
        for u in &unitaries {
            if u.rows() != data_dim || u.cols() != data_dim {
                return Err(SimError::DimensionMismatch(
                    "unitaries must act on the data space".into(),
                ));
            }
            let dev = u
                .conjugate_transpose()
                .matmul(u)?
                .sub(&ComplexMatrix::identity(data_dim))?
                .frobenius_norm();
            if dev > 1e-9 {
                return Err(SimError::NonUnitary { deviation: dev });
            }
        }
        if halt_projector.dim() != data_dim {
            return Err(SimError::DimensionMismatch(
                "halt projector must act on the data space".into(),
            ));
        }
        let norm = initial_state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SimError::InvalidConfig(format!(
                "initial state norm {norm} not 1"
            )));
        }
        Ok(Self {
            unitaries,
            initial_state,
            halt_projector,
        })
    }

    pub fn step_count(&self) -> usize {
        self.unitaries.len()
    }

    pub fn data_dim(&self) -> usize {
        self.initial_state.len()
    }

    /// Partial computation output `(prod_{s<t} U_s) |psi_0>`.
    pub fn partial_output(&self, t: usize) -> Result<CVector> {
        let mut v = self.initial_state.clone();
        for u in self.unitaries.iter().take(t) {
            v = u.apply(&v)?;
        }
        Ok(v)
    }
}

/// Which propagation term to build.
///
/// The completed form adds the diagonal `(|t><t| + |t+1><t+1|)/2` part that
/// makes the history state an exact zero eigenvector; the literal form keeps
/// only the hopping terms, and its ground state must be found numerically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClockForm {
    #[default]
    Completed,
    LiteralHopping,
}

/// Clock-and-data Hamiltonian whose ground space encodes the computation.
pub fn feynman_kitaev(spec: &HistoryStateSpec, form: ClockForm) -> Result<HermitianOperator> {
    let steps = spec.step_count();
    let clock_dim = steps + 1;
    let data_dim = spec.data_dim();
    let dim = clock_dim * data_dim;
    let mut h = ComplexMatrix::zeros(dim, dim);

    let clock_op = |i: usize, j: usize| -> ComplexMatrix {
        ComplexMatrix::from_fn(clock_dim, clock_dim, |r, c| {
            if r == i && c == j {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    };
    let identity_data = ComplexMatrix::identity(data_dim);

    for (t, u) in spec.unitaries.iter().enumerate() {
        let hop = kron(&clock_op(t + 1, t), u)?;
        let hop_dag = hop.conjugate_transpose();
        match form {
            ClockForm::Completed => {
                let diag = kron(
                    &clock_op(t, t).add(&clock_op(t + 1, t + 1))?,
                    &identity_data,
                )?;
                h = h
                    .add(&diag.scale(C64::new(0.5, 0.0)))?
                    .sub(&hop.add(&hop_dag)?.scale(C64::new(0.5, 0.0)))?;
            }
            ClockForm::LiteralHopping => {
                h = h.add(&hop.add(&hop_dag)?)?;
            }
        }
    }

    // Initial-state penalty at t = 0.
    let psi0 = &spec.initial_state;
    let psi0_proj = ComplexMatrix::from_fn(data_dim, data_dim, |i, j| psi0[i] * psi0[j].conj());
    h = h.add(&kron(
        &clock_op(0, 0),
        &identity_data.sub(&psi0_proj)?,
    )?)?;

    // Halt penalty at t = L.
    let halt = identity_data.sub(spec.halt_projector.matrix())?;
    h = h.add(&kron(&clock_op(steps, steps), &halt)?)?;

    HermitianOperator::new(h)
}

/// Normalized uniform superposition over clock times tensored with partial
/// computation outputs.
pub fn history_state(spec: &HistoryStateSpec) -> Result<CVector> {
    let steps = spec.step_count();
    let clock_dim = steps + 1;
    let data_dim = spec.data_dim();
    let mut v = CVector::zeros(clock_dim * data_dim);
    let amp = 1.0 / (clock_dim as f64).sqrt();
    for t in 0..clock_dim {
        let partial = spec.partial_output(t)?;
        for d in 0..data_dim {
            v[t * data_dim + d] = partial[d] * C64::new(amp, 0.0);
        }
    }
    Ok(v)
}
