//! Pauli matrices, basis states, and operator embedding on qubit registers.

use num_complex::Complex64 as C64;

use super::hermitian::HermitianOperator;
use super::matrix::{kron, ComplexMatrix, CVector};
use crate::error::Result;

pub fn x() -> HermitianOperator {
    HermitianOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
}

pub fn y() -> HermitianOperator {
    HermitianOperator::new(
        ComplexMatrix::from_rows_vec(
            2,
            2,
            vec![
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        )
        .unwrap(),
    )
    .unwrap()
}

pub fn z() -> HermitianOperator {
    HermitianOperator::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
}

/// Computational basis state `|idx>` of the given dimension.
pub fn ket(dim: usize, idx: usize) -> CVector {
    CVector::from_fn(dim, |i, _| {
        if i == idx {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `|+> = (|0> + |1>)/sqrt(2)`.
pub fn ket_plus() -> CVector {
    CVector::from_vec(vec![
        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
    ])
}

/// `|1><0|` on a single qubit (pointer raising in the sensing coupling).
pub fn raise() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]])
}

/// Projector `|idx><idx|` on a factor of the given dimension.
pub fn basis_projector(dim: usize, idx: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == idx && j == idx {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Place operators on selected factors of a register, identity elsewhere.
///
/// `layout` lists the factor dimensions left to right; `ops` pairs a factor
/// index with the operator acting there.
pub fn embed(layout: &[usize], ops: &[(usize, &ComplexMatrix)]) -> Result<ComplexMatrix> {
    let mut acc: Option<ComplexMatrix> = None;
    for (idx, &dim) in layout.iter().enumerate() {
        let factor = ops
            .iter()
            .find(|(k, _)| *k == idx)
            .map(|(_, m)| (*m).clone())
            .unwrap_or_else(|| ComplexMatrix::identity(dim));
        acc = Some(match acc {
            None => factor,
            Some(a) => kron(&a, &factor)?,
        });
    }
    Ok(acc.expect("layout must be nonempty"))
}

/// Hermitian embedding convenience for observables.
pub fn embed_hermitian(
    layout: &[usize],
    ops: &[(usize, &HermitianOperator)],
) -> Result<HermitianOperator> {
    let mats: Vec<(usize, &ComplexMatrix)> =
        ops.iter().map(|(k, h)| (*k, h.matrix())).collect();
    HermitianOperator::new(embed(layout, &mats)?)
}
