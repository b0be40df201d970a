//! Induction as a relative-entropy cost functional over parametrized model
//! states, with finite-difference gradient flow.

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};
use crate::infogeo::{relative_entropy, ParametrizedState, RelEntropy, SPECTRUM_CUT};
use crate::record::TrajectoryRecord;
use crate::tensor::{
    apply_spectral_function, commutator_matrices, herm_eig, ComplexMatrix, DensityOperator,
    HermitianOperator,
};

/// Thermodynamic induction cost `k_B T * S(rho_D || rho_theta)`.
///
/// Infinite whenever the data state has weight outside the model support.
pub fn induction_cost(
    data: &DensityOperator,
    model: &DensityOperator,
    kbt: f64,
) -> Result<RelEntropy> {
    if kbt <= 0.0 {
        return Err(SimError::NonpositiveParameter {
            name: "kbt".into(),
            value: kbt,
        });
    }
    Ok(match relative_entropy(data, model)? {
        RelEntropy::Finite(v) => RelEntropy::Finite(kbt * v),
        RelEntropy::Infinite => RelEntropy::Infinite,
    })
}

/// `||[rho_D, ln rho_theta]||_F`: vanishes exactly when the data state and
/// the model log-density commute, flagging disturbance-free readout.
pub fn disturbance_witness(data: &DensityOperator, model: &DensityOperator) -> Result<f64> {
    let h = HermitianOperator::new(model.matrix().clone())?;
    let (vals, vecs) = herm_eig(&h)?;
    let ln_model = apply_spectral_function(&vals, &vecs, |l| {
        if l > SPECTRUM_CUT {
            C64::new(l.ln(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })?;
    Ok(commutator_matrices(data.matrix(), &ln_model)?.frobenius_norm())
}

/// Full-rank qubit state from an interior Bloch vector `(r_x, r_y, r_z)`.
pub fn bloch_state(r: &[f64]) -> Result<DensityOperator> {
    if r.len() != 3 {
        return Err(SimError::InvalidConfig(format!(
            "Bloch vector needs 3 components, got {}",
            r.len()
        )));
    }
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if norm >= 1.0 {
        return Err(SimError::InvalidDensity(format!(
            "Bloch vector norm {norm} must stay below 1 for a full-rank model"
        )));
    }
    let m = ComplexMatrix::from_rows_vec(
        2,
        2,
        vec![
            C64::new(0.5 * (1.0 + r[2]), 0.0),
            C64::new(0.5 * r[0], -0.5 * r[1]),
            C64::new(0.5 * r[0], 0.5 * r[1]),
            C64::new(0.5 * (1.0 - r[2]), 0.0),
        ],
    )?;
    DensityOperator::single(m)
}

/// Settings for the induction gradient flow.
#[derive(Debug, Clone, Copy)]
pub struct InductionFlowConfig {
    /// Temperature prefactor of the cost.
    pub kbt: f64,
    /// Gradient-descent step size.
    pub rate: f64,
    /// Number of descent steps.
    pub steps: usize,
    /// Central-difference step for the parameter gradient.
    pub perturbation: f64,
}

impl Default for InductionFlowConfig {
    fn default() -> Self {
        Self {
            kbt: 1.0,
            rate: 0.1,
            steps: 200,
            perturbation: 1e-5,
        }
    }
}

/// Result of a gradient-flow run.
#[derive(Debug, Clone)]
pub struct InductionFlow {
    pub record: TrajectoryRecord,
    pub final_theta: Vec<f64>,
    pub final_cost: f64,
}

fn finite_cost(
    data: &DensityOperator,
    family: &ParametrizedState,
    theta: &[f64],
    kbt: f64,
) -> Result<f64> {
    let model = (family.map)(theta)?;
    induction_cost(data, &model, kbt)?.finite()
}

/// Finite-difference gradient descent on the induction cost.
///
/// Records `cost` and `disturbance_witness` series, one sample per step
/// (the step index plays the role of time). A support violation anywhere
/// along the flow is an error: gradients of an infinite cost are undefined.
pub fn induction_gradient_flow(
    data: &DensityOperator,
    family: &ParametrizedState,
    theta0: &[f64],
    config: &InductionFlowConfig,
) -> Result<InductionFlow> {
    if theta0.len() != family.param_dim {
        return Err(SimError::InvalidConfig(format!(
            "initial parameter has {} components, family expects {}",
            theta0.len(),
            family.param_dim
        )));
    }
    if config.rate <= 0.0 {
        return Err(SimError::NonpositiveParameter {
            name: "rate".into(),
            value: config.rate,
        });
    }
    let mut record = TrajectoryRecord::new();
    record.declare_series("cost");
    record.declare_series("disturbance_witness");
    let mut theta = theta0.to_vec();
    let mut cost = finite_cost(data, family, &theta, config.kbt)?;
    for step in 0..=config.steps {
        let model = (family.map)(&theta)?;
        let witness = disturbance_witness(data, &model)?;
        record.push_sample(
            step as f64,
            &[("cost", cost), ("disturbance_witness", witness)],
        );
        if step == config.steps {
            break;
        }
        let mut grad = vec![0.0; theta.len()];
        for k in 0..theta.len() {
            let mut plus = theta.clone();
            plus[k] += config.perturbation;
            let mut minus = theta.clone();
            minus[k] -= config.perturbation;
            let cp = finite_cost(data, family, &plus, config.kbt)?;
            let cm = finite_cost(data, family, &minus, config.kbt)?;
            grad[k] = (cp - cm) / (2.0 * config.perturbation);
        }
        for (t, g) in theta.iter_mut().zip(&grad) {
            *t -= config.rate * g;
        }
        cost = finite_cost(data, family, &theta, config.kbt)?;
    }
    Ok(InductionFlow {
        final_theta: theta,
        final_cost: cost,
        record,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::pauli;
    use approx::assert_abs_diff_eq;

    fn bloch_family() -> ParametrizedState<'static> {
        fn map(theta: &[f64]) -> Result<DensityOperator> {
            bloch_state(theta)
        }
        ParametrizedState::new(&(map as fn(&[f64]) -> Result<DensityOperator>), 3)
    }

    #[test]
    fn cost_is_zero_at_the_data_state() {
        let rho = bloch_state(&[0.2, 0.0, 0.5]).unwrap();
        let c = induction_cost(&rho, &rho, 1.0).unwrap().finite().unwrap();
        assert_abs_diff_eq!(c, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn cost_scales_linearly_with_temperature() {
        let data = bloch_state(&[0.0, 0.0, 0.6]).unwrap();
        let model = bloch_state(&[0.0, 0.0, 0.1]).unwrap();
        let c1 = induction_cost(&data, &model, 1.0).unwrap().finite().unwrap();
        let c3 = induction_cost(&data, &model, 3.0).unwrap().finite().unwrap();
        assert_abs_diff_eq!(c3, 3.0 * c1, epsilon = 1e-12);
    }

    #[test]
    fn diagonal_cost_matches_kl_oracle() {
        // Z-axis Bloch states are diagonal; cost reduces to classical KL.
        let data = bloch_state(&[0.0, 0.0, 0.6]).unwrap(); // p = (0.8, 0.2)
        let model = bloch_state(&[0.0, 0.0, -0.2]).unwrap(); // q = (0.4, 0.6)
        let kl = 0.8 * (0.8f64 / 0.4).ln() + 0.2 * (0.2f64 / 0.6).ln();
        let c = induction_cost(&data, &model, 1.0).unwrap().finite().unwrap();
        assert_abs_diff_eq!(c, kl, epsilon = 1e-10);
    }

    #[test]
    fn pure_model_off_support_costs_infinity() {
        let data = DensityOperator::pure_state(&pauli::ket(2, 1), vec![2]).unwrap();
        let model = DensityOperator::pure_state(&pauli::ket(2, 0), vec![2]).unwrap();
        assert_eq!(
            induction_cost(&data, &model, 1.0).unwrap(),
            RelEntropy::Infinite
        );
    }

    #[test]
    fn witness_vanishes_for_commuting_states() {
        let data = bloch_state(&[0.0, 0.0, 0.6]).unwrap();
        let model = bloch_state(&[0.0, 0.0, -0.3]).unwrap();
        assert_abs_diff_eq!(disturbance_witness(&data, &model).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn witness_positive_for_noncommuting_states() {
        let data = bloch_state(&[0.6, 0.0, 0.0]).unwrap();
        let model = bloch_state(&[0.0, 0.0, 0.6]).unwrap();
        assert!(disturbance_witness(&data, &model).unwrap() > 0.1);
    }

    #[test]
    fn gradient_flow_recovers_the_data_state() {
        let data = bloch_state(&[0.3, -0.2, 0.4]).unwrap();
        let family = bloch_family();
        let config = InductionFlowConfig {
            steps: 400,
            ..Default::default()
        };
        let flow =
            induction_gradient_flow(&data, &family, &[0.0, 0.0, 0.0], &config).unwrap();
        assert!(flow.final_cost < 1e-4, "final cost {}", flow.final_cost);
        assert_abs_diff_eq!(flow.final_theta[0], 0.3, epsilon = 0.02);
        assert_abs_diff_eq!(flow.final_theta[2], 0.4, epsilon = 0.02);
        // Cost is non-increasing along the flow (convex landscape).
        let costs = flow.record.series_named("cost").unwrap();
        for w in costs.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }

    #[test]
    fn rejects_nonpositive_temperature() {
        let rho = bloch_state(&[0.0, 0.0, 0.1]).unwrap();
        assert!(induction_cost(&rho, &rho, 0.0).is_err());
    }
}
