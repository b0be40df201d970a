//! Unitary (von Neumann) and Lindblad evolution of density operators.

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};
use crate::record::TrajectoryRecord;
use crate::tensor::{
    commutator_matrices, exp_minus_iht, herm_eig, ComplexMatrix, DensityOperator,
    HermitianOperator,
};

/// Stability bound for the fixed-step RK4 integrator.
pub const LINDBLAD_DT_BOUND: f64 = 0.1;
/// Allowed trace drift of recorded states.
pub const LINDBLAD_TRACE_TOL: f64 = 1e-7;
/// Allowed negativity of recorded states.
pub const LINDBLAD_POSITIVITY_TOL: f64 = 1e-6;

/// Hamiltonian plus jump operators with nonnegative rates.
#[derive(Debug, Clone)]
pub struct LindbladModel {
    hamiltonian: HermitianOperator,
    jumps: Vec<(ComplexMatrix, f64)>,
}

impl LindbladModel {
    pub fn new(hamiltonian: HermitianOperator, jumps: Vec<(ComplexMatrix, f64)>) -> Result<Self> {
        let dim = hamiltonian.dim();
        for (l, rate) in &jumps {
            if l.rows() != dim || l.cols() != dim {
                return Err(SimError::DimensionMismatch(format!(
                    "jump operator is {}x{}, Hamiltonian dim {dim}",
                    l.rows(),
                    l.cols()
                )));
            }
            if *rate < 0.0 {
                return Err(SimError::NonpositiveParameter {
                    name: "jump rate".into(),
                    value: *rate,
                });
            }
        }
        Ok(Self { hamiltonian, jumps })
    }

    pub fn closed(hamiltonian: HermitianOperator) -> Self {
        Self {
            hamiltonian,
            jumps: Vec::new(),
        }
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[(ComplexMatrix, f64)] {
        &self.jumps
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    /// `|H| + sum_a gamma_a |L_a|^2` with spectral norms; used for the dt
    /// stability check.
    pub fn stiffness(&self) -> Result<f64> {
        let mut acc = self.hamiltonian.operator_norm()?;
        for (l, rate) in &self.jumps {
            let gram = HermitianOperator::new(l.conjugate_transpose().matmul(l)?)?;
            let (vals, _) = herm_eig(&gram)?;
            acc += rate * vals.last().copied().unwrap_or(0.0);
        }
        Ok(acc)
    }

    /// `L(rho) = -i[H, rho] + sum_a gamma_a (L rho L^dag - {L^dag L, rho}/2)`.
    pub fn superoperator(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut out =
            commutator_matrices(self.hamiltonian.matrix(), rho)?.scale(C64::new(0.0, -1.0));
        for (l, rate) in &self.jumps {
            let l_dag = l.conjugate_transpose();
            let sandwich = l.matmul(rho)?.matmul(&l_dag)?;
            let gram = l_dag.matmul(l)?;
            let anti = gram.matmul(rho)?.add(&rho.matmul(&gram)?)?;
            out = out.add(
                &sandwich
                    .sub(&anti.scale(C64::new(0.5, 0.0)))?
                    .scale(C64::new(*rate, 0.0)),
            )?;
        }
        Ok(out)
    }

    /// One classical RK4 step of the master equation.
    pub fn rk4_step(&self, rho: &ComplexMatrix, dt: f64) -> Result<ComplexMatrix> {
        let k1 = self.superoperator(rho)?;
        let k2 = self.superoperator(&rho.add(&k1.scale(C64::new(dt / 2.0, 0.0)))?)?;
        let k3 = self.superoperator(&rho.add(&k2.scale(C64::new(dt / 2.0, 0.0)))?)?;
        let k4 = self.superoperator(&rho.add(&k3.scale(C64::new(dt, 0.0)))?)?;
        let incr = k1
            .add(&k2.scale(C64::new(2.0, 0.0)))?
            .add(&k3.scale(C64::new(2.0, 0.0)))?
            .add(&k4)?
            .scale(C64::new(dt / 6.0, 0.0));
        rho.add(&incr)
    }
}

/// Check a recorded state against the trace and positivity budgets.
pub fn validate_lindblad_state(rho: &ComplexMatrix, step: usize) -> Result<f64> {
    let tr = rho.trace();
    let drift = ((tr.re - 1.0).powi(2) + tr.im.powi(2)).sqrt();
    if drift > LINDBLAD_TRACE_TOL {
        return Err(SimError::TraceDrift(drift, step));
    }
    let herm = HermitianOperator::new(
        rho.add(&rho.conjugate_transpose())?.scale(C64::new(0.5, 0.0)),
    )?;
    let (vals, _) = herm_eig(&herm)?;
    if vals[0] < -LINDBLAD_POSITIVITY_TOL {
        return Err(SimError::PositivityViolation(vals[0], step));
    }
    Ok(vals[0])
}

/// Closed-system evolution `rho(t) = U rho U^dag`, `U = exp(-i H t)`.
pub fn evolve_unitary(
    h: &HermitianOperator,
    rho0: &DensityOperator,
    t: f64,
) -> Result<DensityOperator> {
    if h.dim() != rho0.dim() {
        return Err(SimError::DimensionMismatch(format!(
            "Hamiltonian dim {} vs state dim {}",
            h.dim(),
            rho0.dim()
        )));
    }
    let u = exp_minus_iht(h, t)?;
    let evolved = u.matmul(rho0.matrix())?.matmul(&u.conjugate_transpose())?;
    DensityOperator::new(evolved, rho0.factor_dims().to_vec())
}

/// Result of a fixed-step Lindblad integration.
#[derive(Debug, Clone)]
pub struct LindbladRun {
    pub record: TrajectoryRecord,
    /// Raw evolved matrices, one per recorded sample (initial state first).
    pub states: Vec<ComplexMatrix>,
    pub factor_dims: Vec<usize>,
}

impl LindbladRun {
    pub fn final_state(&self) -> Result<DensityOperator> {
        DensityOperator::new(
            self.states.last().expect("run is never empty").clone(),
            self.factor_dims.clone(),
        )
    }
}

/// Integrate the master equation with fixed-step RK4, validating every
/// recorded state (violations are errors, never silently renormalized).
///
/// Records `trace` and `min_eigenvalue` series.
pub fn lindblad_evolve(
    model: &LindbladModel,
    rho0: &DensityOperator,
    dt: f64,
    steps: usize,
) -> Result<LindbladRun> {
    if steps == 0 {
        return Err(SimError::InvalidConfig("steps must be at least 1".into()));
    }
    if model.dim() != rho0.dim() {
        return Err(SimError::DimensionMismatch(format!(
            "model dim {} vs state dim {}",
            model.dim(),
            rho0.dim()
        )));
    }
    let stiffness = dt * model.stiffness()?;
    if stiffness > LINDBLAD_DT_BOUND {
        return Err(SimError::StepTooLarge(stiffness));
    }
    let mut record = TrajectoryRecord::new();
    record.declare_series("trace");
    record.declare_series("min_eigenvalue");
    let mut states = Vec::with_capacity(steps + 1);
    let mut rho = rho0.matrix().clone();
    for step in 0..=steps {
        if step > 0 {
            rho = model.rk4_step(&rho, dt)?;
        }
        let min_eig = validate_lindblad_state(&rho, step)?;
        record.push_sample(
            step as f64 * dt,
            &[("trace", rho.trace().re), ("min_eigenvalue", min_eig)],
        );
        states.push(rho.clone());
    }
    Ok(LindbladRun {
        record,
        states,
        factor_dims: rho0.factor_dims().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::pauli;
    use crate::tensor::DensityOperator;
    use approx::assert_abs_diff_eq;

    fn plus_state() -> DensityOperator {
        DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap()
    }

    #[test]
    fn commuting_hamiltonian_leaves_diagonal_state_fixed() {
        let rho = DensityOperator::single(
            ComplexMatrix::from_real_rows(&[&[0.7, 0.0], &[0.0, 0.3]]),
        )
        .unwrap();
        let out = evolve_unitary(&pauli::z(), &rho, 2.3).unwrap();
        assert!(out.matrix().sub(rho.matrix()).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn z_rotation_of_plus_state() {
        // Analytic oracle: off-diagonal picks up exp(-2 i t); at t = pi/2
        // the coherence is multiplied by exp(-i pi) = -1.
        let out = evolve_unitary(&pauli::z(), &plus_state(), std::f64::consts::FRAC_PI_2)
            .unwrap();
        assert_abs_diff_eq!(out.matrix().get(0, 1).re, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(out.matrix().get(0, 1).im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn unitary_evolution_preserves_spectrum() {
        let h = pauli::x().add(&pauli::z()).unwrap();
        let rho = DensityOperator::single(
            ComplexMatrix::from_real_rows(&[&[0.8, 0.1], &[0.1, 0.2]]),
        )
        .unwrap();
        let before = rho.eigenvalues().unwrap();
        let after = evolve_unitary(&h, &rho, 1.1).unwrap().eigenvalues().unwrap();
        for (a, b) in before.iter().zip(&after) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn pure_dephasing_matches_analytic_decay() {
        // d rho01/dt = -2 gamma rho01 under jump sqrt(gamma) Z.
        let gamma = 0.5;
        let model = LindbladModel::new(
            HermitianOperator::zero(2),
            vec![(pauli::z().matrix().clone(), gamma)],
        )
        .unwrap();
        let dt = 0.01;
        let steps = 200; // t = 2
        let run = lindblad_evolve(&model, &plus_state(), dt, steps).unwrap();
        for (k, rho) in run.states.iter().enumerate() {
            let t = k as f64 * dt;
            let expected = 0.5 * (-2.0 * gamma * t).exp();
            assert_abs_diff_eq!(rho.get(0, 1).norm(), expected, epsilon = 1e-4);
        }
    }

    #[test]
    fn closed_lindblad_matches_unitary() {
        let h = pauli::z();
        let model = LindbladModel::closed(h.clone());
        let run = lindblad_evolve(&model, &plus_state(), 0.01, 100).unwrap();
        let direct = evolve_unitary(&h, &plus_state(), 1.0).unwrap();
        let diff = run
            .states
            .last()
            .unwrap()
            .sub(direct.matrix())
            .unwrap()
            .frobenius_norm();
        assert!(diff < 1e-6, "deviation {diff}");
    }

    #[test]
    fn trace_is_preserved_over_long_runs() {
        let model = LindbladModel::new(
            pauli::x(),
            vec![(pauli::z().matrix().clone(), 0.3)],
        )
        .unwrap();
        let run = lindblad_evolve(&model, &plus_state(), 0.01, 1000).unwrap();
        for tr in run.record.series_named("trace").unwrap() {
            assert_abs_diff_eq!(*tr, 1.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn oversized_step_is_rejected() {
        let model = LindbladModel::closed(pauli::z().scale(50.0));
        assert!(matches!(
            lindblad_evolve(&model, &plus_state(), 0.1, 1).unwrap_err(),
            SimError::StepTooLarge(_)
        ));
    }
}
