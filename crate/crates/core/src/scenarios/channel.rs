//! Channel taxonomy: classification of agent-environment interfaces by
//! input/output register kind, with operational checks on the realization.


use crate::error::{Result, SimError};
use crate::tensor::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegisterKind {
    Classical,
    Quantum,
}

/// Four channel types by (input, output) register kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelClass {
    Ctc,
    Ctq,
    Qtc,
    Qtq,
}

/// Concrete realization of a channel.
#[derive(Debug, Clone)]
pub enum ChannelRealization {
    /// Completely positive map `rho -> sum_k K rho K^dag`.
    Kraus(Vec<ComplexMatrix>),
    /// Column-stochastic matrix on probability vectors.
    Stochastic(Vec<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub struct ChannelDescriptor {
    pub input_kind: RegisterKind,
    pub output_kind: RegisterKind,
    pub realization: ChannelRealization,
}

/// Apply a Kraus realization to a density matrix.
pub fn apply_kraus(kraus: &[ComplexMatrix], rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = rho.rows();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for k in kraus {
        out = out.add(&k.matmul(rho)?.matmul(&k.conjugate_transpose())?)?;
    }
    Ok(out)
}

fn validate_kraus(kraus: &[ComplexMatrix]) -> Result<usize> {
    let dim = kraus
        .first()
        .map(|k| k.rows())
        .ok_or_else(|| SimError::InvalidConfig("empty Kraus list".into()))?;
    let mut gram = ComplexMatrix::zeros(dim, dim);
    for k in kraus {
        if k.rows() != dim || k.cols() != dim {
            return Err(SimError::DimensionMismatch(
                "Kraus operators must share one square dimension".into(),
            ));
        }
        gram = gram.add(&k.conjugate_transpose().matmul(k)?)?;
    }
    let deviation = gram.sub(&ComplexMatrix::identity(dim))?.frobenius_norm();
    if deviation > 1e-9 {
        return Err(SimError::TraceNonPreserving { deviation });
    }
    Ok(dim)
}

fn validate_stochastic(map: &[Vec<f64>]) -> Result<()> {
    let n = map.len();
    if n == 0 {
        return Err(SimError::InvalidConfig("empty stochastic map".into()));
    }
    for row in map {
        if row.len() != n {
            return Err(SimError::DimensionMismatch(
                "stochastic map must be square".into(),
            ));
        }
        for &v in row {
            if !(0.0..=1.0 + 1e-12).contains(&v) {
                return Err(SimError::InvalidProbability(format!(
                    "stochastic entry {v} outside [0, 1]"
                )));
            }
        }
    }
    for col in 0..n {
        let s: f64 = map.iter().map(|row| row[col]).sum();
        if (s - 1.0).abs() > 1e-9 {
            return Err(SimError::TraceNonPreserving {
                deviation: (s - 1.0).abs(),
            });
        }
    }
    Ok(())
}

fn max_offdiag(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j {
                worst = worst.max(m.get(i, j).norm());
            }
        }
    }
    worst
}

/// Classify a channel by its endpoint kinds, verifying the realization:
/// Kraus completeness for quantum inputs, column-stochasticity for classical
/// maps, and (for classical-output quantum-input channels) that every
/// computational-basis-diagonal input stays diagonal.
pub fn classify_channel(c: &ChannelDescriptor) -> Result<ChannelClass> {
    match (&c.realization, c.input_kind) {
        (ChannelRealization::Stochastic(map), RegisterKind::Classical) => {
            validate_stochastic(map)?;
        }
        (ChannelRealization::Stochastic(_), RegisterKind::Quantum) => {
            return Err(SimError::InvalidConfig(
                "quantum-input channel needs a Kraus realization".into(),
            ));
        }
        (ChannelRealization::Kraus(kraus), _) => {
            let dim = validate_kraus(kraus)?;
            if c.input_kind == RegisterKind::Quantum && c.output_kind == RegisterKind::Classical {
                // Operational contract: basis-diagonal in, diagonal out.
                for b in 0..dim {
                    let basis = crate::tensor::pauli::basis_projector(dim, b);
                    let out = apply_kraus(kraus, &basis)?;
                    if max_offdiag(&out) > 1e-9 {
                        return Err(SimError::ChannelContract);
                    }
                }
            }
        }
    }
    Ok(match (c.input_kind, c.output_kind) {
        (RegisterKind::Classical, RegisterKind::Classical) => ChannelClass::Ctc,
        (RegisterKind::Classical, RegisterKind::Quantum) => ChannelClass::Ctq,
        (RegisterKind::Quantum, RegisterKind::Classical) => ChannelClass::Qtc,
        (RegisterKind::Quantum, RegisterKind::Quantum) => ChannelClass::Qtq,
    })
}

/// Kraus operators of the computational-basis measurement channel
/// `rho -> sum_i <i|rho|i> |i><i|`.
pub fn dephasing_kraus(dim: usize) -> Vec<ComplexMatrix> {
    (0..dim)
        .map(|i| crate::tensor::pauli::basis_projector(dim, i))
        .collect()
}
