//! Information-geometric quantities: entropies, relative entropy, fidelity,
//! and classical/quantum Fisher information.

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};
use crate::tensor::{
    apply_spectral_function, herm_eig, ComplexMatrix, DensityOperator, HermitianOperator,
};

/// Eigenvalues below this are treated as exact zeros in spectral logs.
pub const SPECTRUM_CUT: f64 = 1e-12;
/// Eigenvalue-sum regularizer in the Fisher-information denominator.
pub const QFI_EPSILON: f64 = 1e-10;
/// Default central-difference step for parametrized states.
pub const DEFAULT_PERTURBATION: f64 = 1e-5;

/// Nonnegative vector summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(SimError::InvalidProbability("empty vector".into()));
        }
        for &v in &p {
            if !v.is_finite() || v < -1e-12 {
                return Err(SimError::InvalidProbability(format!(
                    "entry {v} is negative or non-finite"
                )));
            }
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(SimError::InvalidProbability(format!(
                "entries sum to {total}"
            )));
        }
        Ok(Self(p.into_iter().map(|v| v.max(0.0)).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Shannon entropy in nats, with the `0 log 0 = 0` convention.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    p.as_slice()
        .iter()
        .filter(|&&v| v > SPECTRUM_CUT)
        .map(|&v| -v * v.ln())
        .sum()
}

/// Von Neumann entropy `-tr(rho ln rho)` in nats.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    let vals = rho.eigenvalues()?;
    Ok(vals
        .iter()
        .filter(|&&v| v > SPECTRUM_CUT)
        .map(|&v| -v * v.ln())
        .sum())
}

/// Entropy of a raw (possibly slightly drifted) density matrix: the input is
/// symmetrized and eigenvalues below the spectrum cut are dropped. Used for
/// metrics along integrator trajectories whose states carry RK4-level noise.
pub fn von_neumann_entropy_matrix(matrix: &ComplexMatrix) -> Result<f64> {
    let herm = HermitianOperator::new(
        matrix
            .add(&matrix.conjugate_transpose())?
            .scale(C64::new(0.5, 0.0)),
    )?;
    let (vals, _) = herm_eig(&herm)?;
    Ok(vals
        .iter()
        .filter(|&&v| v > SPECTRUM_CUT)
        .map(|&v| -v * v.ln())
        .sum())
}

/// Outcome of a relative-entropy computation; infinite when the support of
/// the first state leaks outside the support of the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelEntropy {
    Finite(f64),
    Infinite,
}

impl RelEntropy {
    pub fn finite(self) -> Result<f64> {
        match self {
            RelEntropy::Finite(v) => Ok(v),
            RelEntropy::Infinite => Err(SimError::SupportViolation),
        }
    }
}

/// Quantum relative entropy `S(rho || sigma) = tr(rho ln rho) - tr(rho ln sigma)`
/// in nats. Returns [`RelEntropy::Infinite`] when `rho` has weight on the
/// kernel of `sigma`.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<RelEntropy> {
    if rho.dim() != sigma.dim() {
        return Err(SimError::DimensionMismatch(format!(
            "relative entropy of dim {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let sig_h = HermitianOperator::new(sigma.matrix().clone())?;
    let (sig_vals, sig_vecs) = herm_eig(&sig_h)?;
    // Support check: weight of rho on the kernel of sigma.
    let dim = rho.dim();
    for (k, &lam) in sig_vals.iter().enumerate() {
        if lam > SPECTRUM_CUT {
            continue;
        }
        let mut weight = C64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                weight += sig_vecs.get(i, k).conj() * rho.matrix().get(i, j) * sig_vecs.get(j, k);
            }
        }
        if weight.re > 1e-10 {
            return Ok(RelEntropy::Infinite);
        }
    }
    let ln_sigma = apply_spectral_function(&sig_vals, &sig_vecs, |l| {
        if l > SPECTRUM_CUT {
            C64::new(l.ln(), 0.0)
        } else {
            // Irrelevant on the support of rho once the check above passes.
            C64::new(0.0, 0.0)
        }
    })?;
    let cross = rho.matrix().matmul(&ln_sigma)?.trace().re;
    let self_term = -von_neumann_entropy(rho)?;
    Ok(RelEntropy::Finite(self_term - cross))
}

/// Uhlmann fidelity `F(rho, sigma) = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
pub fn fidelity(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(SimError::DimensionMismatch(format!(
            "fidelity of dim {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let rho_h = HermitianOperator::new(rho.matrix().clone())?;
    let (vals, vecs) = herm_eig(&rho_h)?;
    let sqrt_rho = apply_spectral_function(&vals, &vecs, |l| C64::new(l.max(0.0).sqrt(), 0.0))?;
    let inner = sqrt_rho.matmul(sigma.matrix())?.matmul(&sqrt_rho)?;
    let inner_h = HermitianOperator::new(inner)?;
    let (ivals, _) = herm_eig(&inner_h)?;
    let mut tr_sqrt = 0.0;
    for &l in &ivals {
        if l < -1e-9 {
            return Err(SimError::InvalidDensity(format!(
                "fidelity intermediate has eigenvalue {l:.3e}"
            )));
        }
        tr_sqrt += l.max(0.0).sqrt();
    }
    Ok((tr_sqrt * tr_sqrt).min(1.0))
}

/// Bures distance `sqrt(2 (1 - sqrt(F)))`.
pub fn bures_distance(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    let f = fidelity(rho, sigma)?;
    Ok((2.0 * (1.0 - f.sqrt()).max(0.0)).sqrt())
}

/// Differentiable family of density operators over a real parameter vector.
pub struct ParametrizedState<'a> {
    pub map: &'a dyn Fn(&[f64]) -> Result<DensityOperator>,
    pub param_dim: usize,
    pub perturbation: f64,
}

impl<'a> ParametrizedState<'a> {
    pub fn new(map: &'a dyn Fn(&[f64]) -> Result<DensityOperator>, param_dim: usize) -> Self {
        Self {
            map,
            param_dim,
            perturbation: DEFAULT_PERTURBATION,
        }
    }

    /// Central-difference derivative of the state along one parameter.
    pub fn derivative(&self, theta: &[f64], component: usize) -> Result<ComplexMatrix> {
        if component >= self.param_dim || theta.len() != self.param_dim {
            return Err(SimError::InvalidConfig(format!(
                "parameter component {component} out of range {}",
                self.param_dim
            )));
        }
        let h = self.perturbation;
        let mut plus = theta.to_vec();
        plus[component] += h;
        let mut minus = theta.to_vec();
        minus[component] -= h;
        let rp = (self.map)(&plus)?;
        let rm = (self.map)(&minus)?;
        Ok(rp
            .matrix()
            .sub(rm.matrix())?
            .scale(C64::new(1.0 / (2.0 * h), 0.0)))
    }
}

/// Quantum Fisher information from a state and its parameter derivative:
/// `F = 2 sum_{ij} |<i| d rho |j>|^2 / (lambda_i + lambda_j)` over eigenpairs
/// with `lambda_i + lambda_j > QFI_EPSILON`.
pub fn qfi_from_derivative(rho: &DensityOperator, drho: &ComplexMatrix) -> Result<f64> {
    qfi_from_derivative_matrices(rho.matrix(), drho)
}

/// [`qfi_from_derivative`] on raw matrices; the state is symmetrized and
/// negative eigenvalue noise is clamped to zero.
pub fn qfi_from_derivative_matrices(rho: &ComplexMatrix, drho: &ComplexMatrix) -> Result<f64> {
    if drho.rows() != rho.rows() || drho.cols() != rho.cols() {
        return Err(SimError::DimensionMismatch(
            "state derivative must match the state dimension".into(),
        ));
    }
    let h = HermitianOperator::new(
        rho.add(&rho.conjugate_transpose())?.scale(C64::new(0.5, 0.0)),
    )?;
    let (vals, vecs) = herm_eig(&h)?;
    let dim = rho.rows();
    // <i| drho |j> in the eigenbasis: V^dag drho V.
    let rotated = vecs
        .conjugate_transpose()
        .matmul(drho)?
        .matmul(&vecs)?;
    let mut f = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let denom = vals[i].max(0.0) + vals[j].max(0.0);
            if denom > QFI_EPSILON {
                f += 2.0 * rotated.get(i, j).norm_sqr() / denom;
            }
        }
    }
    Ok(f)
}

/// Quantum Fisher information of a parametrized family along one component,
/// with the derivative taken by central differences.
pub fn quantum_fisher_information(
    family: &ParametrizedState,
    theta: &[f64],
    component: usize,
) -> Result<f64> {
    let rho = (family.map)(theta)?;
    let drho = family.derivative(theta, component)?;
    qfi_from_derivative(&rho, &drho)
}

/// Classical Fisher information of a probability-vector family along one
/// component: `F = sum_k (d p_k)^2 / p_k`.
pub fn classical_fisher(
    map: &dyn Fn(&[f64]) -> Result<ProbabilityVector>,
    theta: &[f64],
    component: usize,
    perturbation: f64,
) -> Result<f64> {
    if component >= theta.len() {
        return Err(SimError::InvalidConfig(format!(
            "parameter component {component} out of range {}",
            theta.len()
        )));
    }
    let mut plus = theta.to_vec();
    plus[component] += perturbation;
    let mut minus = theta.to_vec();
    minus[component] -= perturbation;
    let p = map(theta)?;
    let pp = map(&plus)?;
    let pm = map(&minus)?;
    let mut f = 0.0;
    for ((&v, &vp), &vm) in p
        .as_slice()
        .iter()
        .zip(pp.as_slice())
        .zip(pm.as_slice())
    {
        if v > QFI_EPSILON {
            let d = (vp - vm) / (2.0 * perturbation);
            f += d * d / v;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::pauli;
    use approx::assert_abs_diff_eq;

    fn mixed(p: f64) -> DensityOperator {
        DensityOperator::single(ComplexMatrix::from_real_rows(&[
            &[p, 0.0],
            &[0.0, 1.0 - p],
        ]))
        .unwrap()
    }

    #[test]
    fn shannon_entropy_of_uniform_pair() {
        let p = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(shannon_entropy(&p), std::f64::consts::LN_2, epsilon = 1e-14);
    }

    #[test]
    fn entropy_of_pure_state_is_zero() {
        let rho = DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn entropy_of_maximally_mixed_qubit() {
        assert_abs_diff_eq!(
            von_neumann_entropy(&mixed(0.5)).unwrap(),
            std::f64::consts::LN_2,
            epsilon = 1e-12
        );
    }

    #[test]
    fn relative_entropy_diagonal_matches_kl_oracle() {
        // Commuting case reduces to classical KL divergence.
        let rho = mixed(0.8);
        let sigma = mixed(0.4);
        let kl = 0.8 * (0.8f64 / 0.4).ln() + 0.2 * (0.2f64 / 0.6).ln();
        match relative_entropy(&rho, &sigma).unwrap() {
            RelEntropy::Finite(v) => assert_abs_diff_eq!(v, kl, epsilon = 1e-12),
            RelEntropy::Infinite => panic!("expected finite"),
        }
    }

    #[test]
    fn relative_entropy_self_is_zero() {
        let rho = mixed(0.3);
        assert_abs_diff_eq!(
            relative_entropy(&rho, &rho).unwrap().finite().unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn relative_entropy_support_violation_is_infinite() {
        let rho = DensityOperator::pure_state(&pauli::ket(2, 1), vec![2]).unwrap();
        let sigma = DensityOperator::pure_state(&pauli::ket(2, 0), vec![2]).unwrap();
        assert_eq!(
            relative_entropy(&rho, &sigma).unwrap(),
            RelEntropy::Infinite
        );
    }

    #[test]
    fn fidelity_of_pure_states_is_overlap_squared() {
        // |<0|+>|^2 = 1/2.
        let zero = DensityOperator::pure_state(&pauli::ket(2, 0), vec![2]).unwrap();
        let plus = DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap();
        assert_abs_diff_eq!(fidelity(&zero, &plus).unwrap(), 0.5, epsilon = 1e-10);
    }

    #[test]
    fn fidelity_identical_states_is_one() {
        let rho = mixed(0.3);
        assert_abs_diff_eq!(fidelity(&rho, &rho).unwrap(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(bures_distance(&rho, &rho).unwrap(), 0.0, epsilon = 1e-5);
    }

    #[test]
    fn qfi_of_phase_rotation_on_plus_state() {
        // Pure state under exp(-i theta Z): QFI = 4 Var(Z) = 4.
        let map = |theta: &[f64]| -> Result<DensityOperator> {
            let u = crate::tensor::exp_minus_iht(&pauli::z(), theta[0])?;
            let psi = u.apply(&pauli::ket_plus())?;
            DensityOperator::pure_state(&psi, vec![2])
        };
        let fam = ParametrizedState::new(&map, 1);
        let f = quantum_fisher_information(&fam, &[0.3], 0).unwrap();
        assert_abs_diff_eq!(f, 4.0, epsilon = 1e-6);
    }

    #[test]
    fn qfi_of_z_eigenstate_under_z_rotation_is_zero() {
        let map = |theta: &[f64]| -> Result<DensityOperator> {
            let u = crate::tensor::exp_minus_iht(&pauli::z(), theta[0])?;
            let psi = u.apply(&pauli::ket(2, 0))?;
            DensityOperator::pure_state(&psi, vec![2])
        };
        let fam = ParametrizedState::new(&map, 1);
        let f = quantum_fisher_information(&fam, &[0.1], 0).unwrap();
        assert_abs_diff_eq!(f, 0.0, epsilon = 1e-6);
    }

    #[test]
    fn classical_fisher_of_bernoulli_family() {
        // p(theta) = (theta, 1-theta): F = 1/theta + 1/(1-theta).
        let map = |theta: &[f64]| ProbabilityVector::new(vec![theta[0], 1.0 - theta[0]]);
        let theta = 0.3;
        let f = classical_fisher(&map, &[theta], 0, 1e-6).unwrap();
        assert_abs_diff_eq!(f, 1.0 / theta + 1.0 / (1.0 - theta), epsilon = 1e-6);
    }

    #[test]
    fn probability_vector_rejects_bad_sum() {
        assert!(ProbabilityVector::new(vec![0.5, 0.3]).is_err());
        assert!(ProbabilityVector::new(vec![1.2, -0.2]).is_err());
    }
}
