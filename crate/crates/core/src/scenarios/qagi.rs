//! Four-qubit quantum toy agent: two policy qubits, a pointer, and one
//! environment qubit, with sensing, reasoning-penalty, and Ising learning
//! terms plus a pointer-dephasing read-out channel.

use num_complex::Complex64 as C64;

use super::config::{ReadoutMode, ScenarioConfig};
use crate::error::Result;
use crate::quantum::LindbladModel;
use crate::tensor::{kron_all, pauli, ComplexMatrix, CVector, DensityOperator, HermitianOperator};

/// Factor order of the register: policy A1, policy A2, pointer m,
/// environment E.
pub const QAGI_LAYOUT: [usize; 4] = [2, 2, 2, 2];
pub const FACTOR_A1: usize = 0;
pub const FACTOR_A2: usize = 1;
pub const FACTOR_M: usize = 2;
pub const FACTOR_E: usize = 3;

/// Assembled quantum toy: named Hermitian terms, their sum, the open-system
/// model for the configured read-out mode, and the initial state.
#[derive(Debug, Clone)]
pub struct QagiToy {
    pub terms: Vec<(String, HermitianOperator)>,
    pub hamiltonian: HermitianOperator,
    pub model: LindbladModel,
    pub initial_state: DensityOperator,
    /// Projectors onto pointer `|0>` / `|1>` for discrete read-outs.
    pub pointer_projectors: Vec<ComplexMatrix>,
}

/// Sensing coupling `kappa (|1><0|_m (x) Z_E + h.c.)` on the full register.
pub fn sensing_term(kappa: f64) -> Result<HermitianOperator> {
    let half = pauli::embed(
        &QAGI_LAYOUT,
        &[(FACTOR_M, &pauli::raise()), (FACTOR_E, pauli::z().matrix())],
    )?;
    HermitianOperator::new(
        half.add(&half.conjugate_transpose())?
            .scale(C64::new(kappa, 0.0)),
    )
}

/// Reasoning penalty `mu (I - Pi)` with
/// `Pi = (I + Z_m)/2 (x) (I + Z_{A1})/2`, i.e. the projector onto
/// `m = |0>, A1 = |0>`.
pub fn reasoning_term(mu: f64) -> Result<HermitianOperator> {
    let pi = pauli::embed(
        &QAGI_LAYOUT,
        &[
            (FACTOR_M, &pauli::basis_projector(2, 0)),
            (FACTOR_A1, &pauli::basis_projector(2, 0)),
        ],
    )?;
    let dim: usize = QAGI_LAYOUT.iter().product();
    HermitianOperator::new(
        ComplexMatrix::identity(dim)
            .sub(&pi)?
            .scale(C64::new(mu, 0.0)),
    )
}

/// Transverse field `g X_{A1}`.
pub fn learning_x_term(g: f64) -> Result<HermitianOperator> {
    let x = pauli::embed(&QAGI_LAYOUT, &[(FACTOR_A1, pauli::x().matrix())])?;
    HermitianOperator::new(x.scale(C64::new(g, 0.0)))
}

/// Ising coupling `J Z_{A1} Z_{A2}`.
pub fn learning_zz_term(j: f64) -> Result<HermitianOperator> {
    let zz = pauli::embed(
        &QAGI_LAYOUT,
        &[
            (FACTOR_A1, pauli::z().matrix()),
            (FACTOR_A2, pauli::z().matrix()),
        ],
    )?;
    HermitianOperator::new(zz.scale(C64::new(j, 0.0)))
}

/// Initial register state `|0>_{A1} |0>_{A2} |0>_m |+>_E`.
pub fn qagi_initial_state() -> Result<DensityOperator> {
    let zero = pauli::ket(2, 0);
    let plus = pauli::ket_plus();
    let outer = |v: &CVector| -> ComplexMatrix {
        ComplexMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    };
    let full = kron_all(&[&outer(&zero), &outer(&zero), &outer(&zero), &outer(&plus)])?;
    DensityOperator::new(full, QAGI_LAYOUT.to_vec())
}

/// Build the quantum toy from a scenario configuration.
pub fn build_qagi_toy(cfg: &ScenarioConfig) -> Result<QagiToy> {
    cfg.validate()?;
    let c = &cfg.couplings;
    let terms = vec![
        ("sensing".to_string(), sensing_term(c.kappa)?),
        ("reasoning".to_string(), reasoning_term(c.mu)?),
        ("learning_x".to_string(), learning_x_term(c.g)?),
        ("learning_zz".to_string(), learning_zz_term(c.j)?),
    ];
    let dim: usize = QAGI_LAYOUT.iter().product();
    let mut hamiltonian = HermitianOperator::zero(dim);
    for (_, term) in &terms {
        hamiltonian = hamiltonian.add(term)?;
    }
    // Read-out rate gamma = kappa^2 (quadratic scaling; unit prefactor).
    let gamma = c.kappa * c.kappa;
    let model = match cfg.readout.mode {
        ReadoutMode::Measure => {
            let z_m = pauli::embed(&QAGI_LAYOUT, &[(FACTOR_M, pauli::z().matrix())])?;
            let jumps = if gamma > 0.0 {
                vec![(z_m, gamma)]
            } else {
                Vec::new()
            };
            LindbladModel::new(hamiltonian.clone(), jumps)?
        }
        ReadoutMode::Continuous => {
            // Sensing replaced by its induced environment dephasing channel.
            let mut h = HermitianOperator::zero(dim);
            for (name, term) in &terms {
                if name != "sensing" {
                    h = h.add(term)?;
                }
            }
            let z_e = pauli::embed(&QAGI_LAYOUT, &[(FACTOR_E, pauli::z().matrix())])?;
            let jumps = if gamma > 0.0 {
                vec![(z_e, gamma)]
            } else {
                Vec::new()
            };
            LindbladModel::new(h, jumps)?
        }
    };
    let pointer_projectors = vec![
        pauli::embed(&QAGI_LAYOUT, &[(FACTOR_M, &pauli::basis_projector(2, 0))])?,
        pauli::embed(&QAGI_LAYOUT, &[(FACTOR_M, &pauli::basis_projector(2, 1))])?,
    ];
    Ok(QagiToy {
        terms,
        hamiltonian,
        model,
        initial_state: qagi_initial_state()?,
        pointer_projectors,
    })
}
