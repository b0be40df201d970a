//! Classical toy agent: a frozen sensor bit and a weight coordinate with
//! smoothed copy/logic penalties, plus a classical-to-quantum actuator hook
//! that writes the action bit into an environment qubit.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::ScenarioConfig;
use crate::classical::{
    kinetic_energy, ClassicalHamiltonian, PhaseSpaceState, SeparableStructure, TermFn,
    DEFAULT_SMOOTHING_WIDTH,
};
use crate::error::Result;
use crate::generator::{logistic, Schedule};
use crate::quantum::evolve_unitary;
use crate::tensor::{pauli, DensityOperator};

/// Coordinate order: sensor bit `q_m` (frozen), weight `theta`.
pub const COORD_QM: usize = 0;
pub const COORD_THETA: usize = 1;

/// Assembled classical toy.
#[derive(Clone)]
pub struct CagiToy {
    pub hamiltonian: ClassicalHamiltonian,
    /// Environment eigenvalue read by the external measurement device.
    pub q_e: f64,
    pub initial_state: PhaseSpaceState,
    /// Tracked quantum environment state (starts as `|+><+|`).
    pub initial_env: DensityOperator,
    pub eta: Schedule,
}

impl std::fmt::Debug for CagiToy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CagiToy")
            .field("q_e", &self.q_e)
            .field("initial_state", &self.initial_state)
            .field("eta", &self.eta)
            .finish()
    }
}

impl CagiToy {
    /// Generator-level term functions for commutation reports.
    ///
    /// The weight kinetic and regularizer pieces belong to one learning
    /// generator, so they are merged into a single `weight` entry; the
    /// pairwise-commutation property holds at this granularity.
    pub fn generator_terms(&self) -> Vec<(String, TermFn)> {
        let mut out: Vec<(String, TermFn)> = Vec::new();
        let mut weight_parts: Vec<TermFn> = Vec::new();
        for (name, f) in self.hamiltonian.terms() {
            if name.starts_with("weight_") {
                weight_parts.push(f.clone());
            } else {
                out.push((name.clone(), f.clone()));
            }
        }
        if !weight_parts.is_empty() {
            let combined: TermFn = Arc::new(move |s: &PhaseSpaceState, t: f64| {
                weight_parts.iter().map(|f| f(s, t)).sum()
            });
            out.push(("weight".to_string(), combined));
        }
        out
    }
}

/// Exact action bit `q_A = 1{theta > 0}`.
pub fn action_bit(theta: f64) -> f64 {
    if theta > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Exact copy-penalty satisfaction: sensor equals environment bit.
pub fn copy_satisfied(q_m: f64, q_e: f64) -> bool {
    q_m == q_e
}

/// Exact logic-clause satisfaction: `(1 - b_m) q_A = 1` with the bit map
/// `b_m = (1 + q_m) / 2` for `q_m` in `{-1, +1}`.
pub fn logic_satisfied(q_m: f64, theta: f64) -> bool {
    let b_m = (1.0 + q_m) / 2.0;
    (1.0 - b_m) * action_bit(theta) == 1.0
}

/// Apply the actuator write `exp(-i eta dt q_A Z)` to the environment qubit.
/// With `eta = 0` (or action bit 0) the state is returned bitwise unchanged.
pub fn apply_actuator(
    env: &DensityOperator,
    theta: f64,
    eta: f64,
    dt: f64,
) -> Result<DensityOperator> {
    let angle = eta * dt * action_bit(theta);
    if angle == 0.0 {
        return Ok(env.clone());
    }
    evolve_unitary(&pauli::z().scale(eta * action_bit(theta)), env, dt)
}

/// Build the classical toy from a scenario configuration.
///
/// The external read-out device measures `Z` on a probe prepared identically
/// to the environment (seeded Born sampling); the outcome initializes both
/// `q_E` and the sensor bit `q_m`. The weight starts uniform in `[-1, 1]`.
pub fn build_cagi_toy(cfg: &ScenarioConfig) -> Result<CagiToy> {
    cfg.validate()?;
    let c = &cfg.couplings;
    let (kappa, mu, lambda, mass) = (c.kappa, c.mu, c.lambda, c.mass);
    let width = DEFAULT_SMOOTHING_WIDTH;
    let eta = Schedule {
        segments: c.eta.clone(),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    // Born sample of Z on |+>: +/-1 with probability 1/2 each.
    let q_e = if rng.random::<f64>() < 0.5 { 1.0 } else { -1.0 };
    let theta0 = 2.0 * rng.random::<f64>() - 1.0;

    let smooth_action = move |theta: f64| logistic(theta / width);
    let smooth_action_grad = move |theta: f64| {
        let s = logistic(theta / width);
        s * (1.0 - s) / width
    };
    let copy_well =
        move |d: f64| (-d * d / (2.0 * width * width)).exp();

    let copy_term: TermFn = Arc::new(move |s: &PhaseSpaceState, _t| {
        kappa * (1.0 - copy_well(s.q[COORD_QM] - q_e))
    });
    let logic_term: TermFn = Arc::new(move |s: &PhaseSpaceState, _t| {
        let b_m = (1.0 + s.q[COORD_QM]) / 2.0;
        mu * (1.0 - (1.0 - b_m) * smooth_action(s.q[COORD_THETA]))
    });
    let kinetic_term: TermFn = {
        let masses = vec![f64::INFINITY, mass];
        Arc::new(move |s: &PhaseSpaceState, _t| kinetic_energy(&masses, &s.p))
    };
    let reg_term: TermFn =
        Arc::new(move |s: &PhaseSpaceState, _t| lambda * s.q[COORD_THETA].abs());
    let actuator_term: TermFn = {
        let eta = eta.clone();
        Arc::new(move |s: &PhaseSpaceState, t| {
            eta.value_at(t) * smooth_action(s.q[COORD_THETA]) * q_e
        })
    };

    let eta_p = eta.clone();
    let structure = SeparableStructure {
        masses: vec![f64::INFINITY, mass],
        potential: {
            let eta = eta.clone();
            Arc::new(move |q: &[f64], t: f64| {
                let b_m = (1.0 + q[COORD_QM]) / 2.0;
                kappa * (1.0 - copy_well(q[COORD_QM] - q_e))
                    + mu * (1.0 - (1.0 - b_m) * smooth_action(q[COORD_THETA]))
                    + lambda * q[COORD_THETA].abs()
                    + eta.value_at(t) * smooth_action(q[COORD_THETA]) * q_e
            })
        },
        gradient: Arc::new(move |q: &[f64], t: f64| {
            let d = q[COORD_QM] - q_e;
            let b_m = (1.0 + q[COORD_QM]) / 2.0;
            let g_qm = kappa * copy_well(d) * d / (width * width)
                + mu * smooth_action(q[COORD_THETA]) / 2.0;
            let g_theta = -mu * (1.0 - b_m) * smooth_action_grad(q[COORD_THETA])
                + lambda * q[COORD_THETA].signum()
                + eta_p.value_at(t) * smooth_action_grad(q[COORD_THETA]) * q_e;
            vec![g_qm, g_theta]
        }),
    };

    let hamiltonian = ClassicalHamiltonian::from_parts(
        vec![
            ("copy".into(), copy_term),
            ("logic".into(), logic_term),
            ("weight_kinetic".into(), kinetic_term),
            ("weight_reg".into(), reg_term),
            ("actuator".into(), actuator_term),
        ],
        Some(structure),
    );

    let initial_state = PhaseSpaceState::new(vec![q_e, theta0], vec![0.0, 0.0])?;
    let initial_env =
        DensityOperator::pure_state(&pauli::ket_plus(), vec![2])?;
    Ok(CagiToy {
        hamiltonian,
        q_e,
        initial_state,
        initial_env,
        eta,
    })
}
