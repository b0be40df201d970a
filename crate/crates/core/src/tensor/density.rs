//! Density operators on composite registers and the partial trace.

use num_complex::Complex64 as C64;

use super::hermitian::{herm_eig, HermitianOperator};
use super::matrix::{ComplexMatrix, CVector};
use crate::error::{Result, SimError};

pub const TRACE_TOL: f64 = 1e-9;
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Positive unit-trace operator on a composite register.
///
/// `factor_dims` records the tensor-factor layout; their product equals the
/// operator dimension. Classical states are the diagonal subcase.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    factor_dims: Vec<usize>,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix, factor_dims: Vec<usize>) -> Result<Self> {
        let dim: usize = factor_dims.iter().product();
        if !matrix.is_square() || matrix.rows() != dim {
            return Err(SimError::InvalidDensity(format!(
                "matrix is {}x{} but factor dims {:?} give {}",
                matrix.rows(),
                matrix.cols(),
                factor_dims,
                dim
            )));
        }
        let herm = HermitianOperator::new(matrix)
            .map_err(|e| SimError::InvalidDensity(e.to_string()))?;
        let tr = herm.matrix().trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(SimError::InvalidDensity(format!(
                "trace {tr} not within {TRACE_TOL:.0e} of 1"
            )));
        }
        let (vals, _) = herm_eig(&herm)?;
        if vals[0] < -POSITIVITY_TOL {
            return Err(SimError::InvalidDensity(format!(
                "minimum eigenvalue {:.3e} below -{POSITIVITY_TOL:.0e}",
                vals[0]
            )));
        }
        Ok(Self {
            matrix: herm.into_matrix(),
            factor_dims,
        })
    }

    /// Single-factor density operator.
    pub fn single(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.rows();
        Self::new(matrix, vec![dim])
    }

    /// Pure state `|psi><psi|` on the given factor layout.
    pub fn pure_state(psi: &CVector, factor_dims: Vec<usize>) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SimError::InvalidDensity(format!(
                "state vector norm {norm} not 1"
            )));
        }
        let dim = psi.len();
        let matrix = ComplexMatrix::from_fn(dim, dim, |i, j| psi[i] * psi[j].conj());
        Self::new(matrix, factor_dims)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let h = HermitianOperator::new(self.matrix.clone())?;
        Ok(herm_eig(&h)?.0)
    }

    /// Trace out every factor not listed in `keep`. Kept factors stay in
    /// their original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityOperator> {
        partial_trace(self, keep)
    }
}

/// Partial trace over the complement of `keep`.
pub fn partial_trace(rho: &DensityOperator, keep: &[usize]) -> Result<DensityOperator> {
    let (out, kept_dims) = partial_trace_matrix(&rho.matrix, &rho.factor_dims, keep)?;
    DensityOperator::new(out, kept_dims)
}

/// Partial trace on a raw matrix with the given factor layout. Returns the
/// reduced matrix and the kept factor dimensions; no density validation.
pub fn partial_trace_matrix(
    matrix: &ComplexMatrix,
    factor_dims: &[usize],
    keep: &[usize],
) -> Result<(ComplexMatrix, Vec<usize>)> {
    let n = factor_dims.len();
    if keep.is_empty() {
        return Err(SimError::InvalidFactorIndex { index: 0, count: n });
    }
    let mut keep_sorted: Vec<usize> = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    for &k in &keep_sorted {
        if k >= n {
            return Err(SimError::InvalidFactorIndex { index: k, count: n });
        }
    }
    let traced: Vec<usize> = (0..n).filter(|i| !keep_sorted.contains(i)).collect();
    let kept_dims: Vec<usize> = keep_sorted.iter().map(|&k| factor_dims[k]).collect();
    let kept_dim: usize = kept_dims.iter().product();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| factor_dims[k]).collect();
    let traced_dim: usize = traced_dims.iter().product();

    // Mixed-radix strides for the full index.
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factor_dims[i + 1];
    }
    let full_index = |kept: usize, tr: usize| -> usize {
        let mut idx = 0;
        let mut rem = kept;
        for (pos, &k) in keep_sorted.iter().enumerate().rev() {
            let d = kept_dims[pos];
            idx += (rem % d) * strides[k];
            rem /= d;
        }
        let mut rem = tr;
        for (pos, &k) in traced.iter().enumerate().rev() {
            let d = traced_dims[pos];
            idx += (rem % d) * strides[k];
            rem /= d;
        }
        idx
    };

    let mut entries = vec![C64::new(0.0, 0.0); kept_dim * kept_dim];
    for i in 0..kept_dim {
        for j in 0..kept_dim {
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..traced_dim {
                acc += matrix.get(full_index(i, e), full_index(j, e));
            }
            entries[i * kept_dim + j] = acc;
        }
    }
    let out = ComplexMatrix::from_rows_vec(kept_dim, kept_dim, entries)?;
    Ok((out, kept_dims))
}
