//! Self-adjoint operators: construction checks, eigendecomposition, and
//! unitary generation `U = exp(-i H t)`.

use nalgebra::SymmetricEigen;
use num_complex::Complex64 as C64;

use super::matrix::{commutator_matrices, ComplexMatrix, EIG_DIMENSION_CAP};
use crate::error::{Result, SimError};

/// Tolerance on `max |M[i][j] - conj(M[j][i])|` at construction.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// A self-adjoint matrix. Inputs within [`HERMITICITY_TOL`] are symmetrized
/// as `(M + M^dag)/2`; anything worse is rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(SimError::DimensionMismatch(format!(
                "Hermitian operator must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(SimError::NotHermitian { deviation });
        }
        let sym = matrix
            .add(&matrix.conjugate_transpose())?
            .scale(C64::new(0.5, 0.0));
        Ok(Self { matrix: sym })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(rows))
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Sum of Hermitian operators is Hermitian.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    /// Real scalar multiple stays Hermitian.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            matrix: self.matrix.scale(C64::new(factor, 0.0)),
        }
    }

    pub fn expectation(&self, rho: &ComplexMatrix) -> Result<f64> {
        Ok(self.matrix.matmul(rho)?.trace().re)
    }

    /// Spectral (operator) norm, `max |lambda|`.
    pub fn operator_norm(&self) -> Result<f64> {
        let (vals, _) = herm_eig(self)?;
        Ok(vals.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }
}

/// Eigendecomposition of a Hermitian operator.
///
/// Eigenvalues come back in ascending order; eigenvectors are the matching
/// columns of an orthonormal matrix `V`, so `V diag(vals) V^dag` reconstructs
/// the input.
pub fn herm_eig(h: &HermitianOperator) -> Result<(Vec<f64>, ComplexMatrix)> {
    let dim = h.dim();
    if dim > EIG_DIMENSION_CAP {
        return Err(SimError::DimensionCapExceeded {
            actual: dim,
            cap: EIG_DIMENSION_CAP,
        });
    }
    let eig = SymmetricEigen::try_new(h.matrix.as_dmatrix().clone(), 1e-13, 10_000)
        .ok_or(SimError::ConvergenceFailure)?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vecs = ComplexMatrix::from_fn(dim, dim, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((vals, vecs))
}

/// Smallest eigenvalue of a Hermitian operator.
pub fn min_eigenvalue(h: &HermitianOperator) -> Result<f64> {
    let (vals, _) = herm_eig(h)?;
    Ok(vals[0])
}

/// `U = exp(-i H t)` via the eigenbasis: `V diag(exp(-i lambda t)) V^dag`.
pub fn exp_minus_iht(h: &HermitianOperator, t: f64) -> Result<ComplexMatrix> {
    let (vals, vecs) = herm_eig(h)?;
    apply_spectral_function(&vals, &vecs, |lam| C64::from_polar(1.0, -lam * t))
}

/// `f(H)` computed entry-wise on the spectrum: `V diag(f(lambda)) V^dag`.
pub fn apply_spectral_function(
    vals: &[f64],
    vecs: &ComplexMatrix,
    f: impl Fn(f64) -> C64,
) -> Result<ComplexMatrix> {
    let dim = vals.len();
    let diag = ComplexMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            f(vals[i])
        } else {
            C64::new(0.0, 0.0)
        }
    });
    vecs.matmul(&diag)?.matmul(&vecs.conjugate_transpose())
}

/// `[A, B] = AB - BA` for equal-dimension Hermitian operators.
pub fn commutator(a: &HermitianOperator, b: &HermitianOperator) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(SimError::DimensionMismatch(format!(
            "commutator of dim {} vs {}",
            a.dim(),
            b.dim()
        )));
    }
    commutator_matrices(a.matrix(), b.matrix())
}

/// Frobenius norm of `[A, B]`.
pub fn commutator_norm(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    Ok(commutator(a, b)?.frobenius_norm())
}
