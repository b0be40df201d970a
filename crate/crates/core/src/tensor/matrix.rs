//! Dense complex matrices and the Kronecker/commutator algebra on them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Result, SimError};

pub type C64 = Complex64;
pub type CVector = DVector<C64>;

/// Total entry count allowed for any stored matrix.
pub const DIMENSION_CAP: usize = 1 << 20;
/// Largest square dimension accepted by the eigensolver and evolutions.
pub const EIG_DIMENSION_CAP: usize = 1024;

/// Dense row-major-constructed complex matrix backed by `nalgebra`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    data: DMatrix<C64>,
}

impl ComplexMatrix {
    /// Build from row-major entries. `entries.len()` must equal `rows * cols`.
    pub fn from_rows_vec(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(SimError::DimensionMismatch(
                "rows and cols must be at least 1".into(),
            ));
        }
        if rows.saturating_mul(cols) > DIMENSION_CAP {
            return Err(SimError::DimensionCapExceeded {
                actual: rows * cols,
                cap: DIMENSION_CAP,
            });
        }
        if entries.len() != rows * cols {
            return Err(SimError::DimensionMismatch(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        Ok(Self {
            data: DMatrix::from_row_iterator(rows, cols, entries),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            data: DMatrix::from_fn(rows, cols, f),
        }
    }

    /// Real-valued entries convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        Self::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            data: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            data: DMatrix::identity(dim, dim),
        }
    }

    pub(crate) fn from_dmatrix(data: DMatrix<C64>) -> Self {
        Self { data }
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[(i, j)]
    }

    /// Entries in row-major order.
    pub fn entries_row_major(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.push(self.data[(i, j)]);
            }
        }
        out
    }

    pub fn conjugate_transpose(&self) -> Self {
        Self {
            data: self.data.adjoint(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            data: &self.data - &other.data,
        })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            data: &self.data * factor,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(SimError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(Self {
            data: &self.data * &other.data,
        })
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.cols() != v.len() {
            return Err(SimError::DimensionMismatch(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows(),
                self.cols(),
                v.len()
            )));
        }
        Ok(&self.data * v)
    }

    pub fn trace(&self) -> C64 {
        self.data.diagonal().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation from Hermitian symmetry, `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                dev = dev.max((self.data[(i, j)] - self.data[(j, i)].conj()).norm());
            }
        }
        dev
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(SimError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(())
    }
}

/// Kronecker product; result dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    if rows.saturating_mul(cols) > DIMENSION_CAP {
        return Err(SimError::DimensionCapExceeded {
            actual: rows * cols,
            cap: DIMENSION_CAP,
        });
    }
    Ok(ComplexMatrix::from_dmatrix(a.data.kronecker(&b.data)))
}

/// Kronecker product over a slice of factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = kron(&acc, f)?;
    }
    Ok(acc)
}

/// `AB - BA` for square matrices of equal dimension.
pub fn commutator_matrices(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    ab.sub(&ba)
}
