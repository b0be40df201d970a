//! Scenario execution: alternate evolution, read-outs, and metric recording.

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::cagi::{apply_actuator, build_cagi_toy, COORD_THETA};
use super::config::{ReadoutMode, ScenarioConfig, ScenarioKind};
use super::qagi::{build_qagi_toy, FACTOR_A1, FACTOR_A2, FACTOR_E, QAGI_LAYOUT};
use super::report::fit_decoherence_rate;
use crate::classical::leapfrog_step;
use crate::error::{Result, SimError};
use crate::infogeo::{qfi_from_derivative_matrices, von_neumann_entropy_matrix};
use crate::quantum::evolve::{validate_lindblad_state, LINDBLAD_DT_BOUND};
use crate::quantum::measure::sample_outcome;
use crate::record::{MeasurementEvent, TrajectoryRecord};
use crate::tensor::{commutator_matrices, partial_trace_matrix, pauli, ComplexMatrix};

/// One finished run: the metric record plus the final reduced environment
/// state and per-step validity series.
#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub record: TrajectoryRecord,
    /// Reduced 2x2 environment matrix at the final time.
    pub env_final: ComplexMatrix,
    /// Trace of the evolving state at each sample.
    pub trace_series: Vec<f64>,
    /// Minimum eigenvalue of the evolving state at each sample.
    pub min_eig_series: Vec<f64>,
}

/// Run one scenario to completion; deterministic at fixed configuration.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    cfg.validate()?;
    match cfg.scenario {
        ScenarioKind::QagiToy => run_qagi(cfg),
        ScenarioKind::CagiToy => run_cagi(cfg),
    }
}

fn declare_schema(record: &mut TrajectoryRecord, term_names: &[String]) {
    record.declare_series("energy_total");
    for name in term_names {
        record.declare_series(&format!("energy_{name}"));
    }
    record.declare_series("vn_entropy_env");
    record.declare_series("offdiag_env_abs");
    record.declare_series("qfi_policy");
}

fn run_qagi(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let toy = build_qagi_toy(cfg)?;
    let dt = cfg.timing.dt;
    let steps = cfg.timing.steps;
    let stiffness = dt * toy.model.stiffness()?;
    if stiffness > LINDBLAD_DT_BOUND {
        return Err(SimError::StepTooLarge(stiffness));
    }
    let term_names: Vec<String> = toy.terms.iter().map(|(n, _)| n.clone()).collect();
    let mut record = TrajectoryRecord::new();
    declare_schema(&mut record, &term_names);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rho = toy.initial_state.matrix().clone();
    let mut trace_series = Vec::with_capacity(steps + 1);
    let mut min_eig_series = Vec::with_capacity(steps + 1);
    let measure_mode = cfg.readout.mode == ReadoutMode::Measure;
    // Policy-state derivative generator for the Fisher metric: X on A1.
    let policy_generator = pauli::embed(&[2, 2], &[(0, pauli::x().matrix())])?;

    let mut env_final = ComplexMatrix::zeros(2, 2);
    for step in 0..=steps {
        let t = step as f64 * dt;
        if step > 0 {
            rho = toy.model.rk4_step(&rho, dt)?;
            if measure_mode && step % cfg.readout.every == 0 {
                let pre_energy = toy.hamiltonian.expectation(&rho)?;
                let (outcome, probability, post) =
                    sample_outcome(&rho, &toy.pointer_projectors, &mut rng)?;
                rho = post;
                let post_energy = toy.hamiltonian.expectation(&rho)?;
                record.events.push(MeasurementEvent {
                    step,
                    time: t,
                    outcome,
                    probability,
                    pre_energy,
                    post_energy,
                });
            }
        }
        let min_eig = validate_lindblad_state(&rho, step)?;
        trace_series.push(rho.trace().re);
        min_eig_series.push(min_eig);

        let mut values: Vec<(String, f64)> = Vec::new();
        let mut total = 0.0;
        for (name, term) in &toy.terms {
            let e = term.expectation(&rho)?;
            total += e;
            values.push((format!("energy_{name}"), e));
        }
        let (env, _) = partial_trace_matrix(&rho, &QAGI_LAYOUT, &[FACTOR_E])?;
        let (policy, _) = partial_trace_matrix(&rho, &QAGI_LAYOUT, &[FACTOR_A1, FACTOR_A2])?;
        let policy_norm = policy.scale(C64::new(1.0 / policy.trace().re, 0.0));
        let dpolicy = commutator_matrices(&policy_generator, &policy_norm)?
            .scale(C64::new(0.0, -1.0));
        let qfi = qfi_from_derivative_matrices(&policy_norm, &dpolicy)?;
        let entropy = von_neumann_entropy_matrix(&env)?;
        let offdiag = env.get(0, 1).norm();

        let mut sample: Vec<(&str, f64)> = vec![("energy_total", total)];
        for (name, v) in &values {
            sample.push((name.as_str(), *v));
        }
        sample.push(("vn_entropy_env", entropy));
        sample.push(("offdiag_env_abs", offdiag));
        sample.push(("qfi_policy", qfi));
        record.push_sample(t, &sample);
        if step == steps {
            env_final = env;
        }
    }
    record.meta = Some(serde_json::to_value(cfg).map_err(|e| {
        SimError::InvalidConfig(format!("metadata serialization: {e}"))
    })?);
    Ok(ScenarioOutput {
        record,
        env_final,
        trace_series,
        min_eig_series,
    })
}

fn run_cagi(cfg: &ScenarioConfig) -> Result<ScenarioOutput> {
    let toy = build_cagi_toy(cfg)?;
    let dt = cfg.timing.dt;
    let steps = cfg.timing.steps;
    let term_names = toy.hamiltonian.term_names();
    let mut record = TrajectoryRecord::new();
    declare_schema(&mut record, &term_names);

    let mut state = toy.initial_state.clone();
    let mut env = toy.initial_env.clone();
    let mut trace_series = Vec::with_capacity(steps + 1);
    let mut min_eig_series = Vec::with_capacity(steps + 1);
    for step in 0..=steps {
        let t = step as f64 * dt;
        if step > 0 {
            state = leapfrog_step(&toy.hamiltonian, &state, dt, (step - 1) as f64 * dt)?;
            let eta = toy.eta.value_at(t);
            env = apply_actuator(&env, state.q[COORD_THETA], eta, dt)?;
        }
        trace_series.push(env.matrix().trace().re);
        min_eig_series.push(
            env.eigenvalues()?
                .first()
                .copied()
                .unwrap_or(0.0),
        );
        let mut total = 0.0;
        let mut values: Vec<(String, f64)> = Vec::new();
        for (name, e) in toy.hamiltonian.term_energies(&state, t) {
            total += e;
            values.push((format!("energy_{name}"), e));
        }
        let entropy = von_neumann_entropy_matrix(env.matrix())?;
        let offdiag = env.matrix().get(0, 1).norm();
        let mut sample: Vec<(&str, f64)> = vec![("energy_total", total)];
        for (name, v) in &values {
            sample.push((name.as_str(), *v));
        }
        sample.push(("vn_entropy_env", entropy));
        sample.push(("offdiag_env_abs", offdiag));
        // The classical policy carries no quantum Fisher information.
        sample.push(("qfi_policy", 0.0));
        record.push_sample(t, &sample);
    }
    record.meta = Some(serde_json::to_value(cfg).map_err(|e| {
        SimError::InvalidConfig(format!("metadata serialization: {e}"))
    })?);
    Ok(ScenarioOutput {
        env_final: env.matrix().clone(),
        record,
        trace_series,
        min_eig_series,
    })
}

/// Mean of the final environment off-diagonal magnitude over seeds
/// `0..seed_count` (runs in parallel, merged in seed order).
pub fn mean_final_env_offdiag(cfg: &ScenarioConfig, seed_count: u64) -> Result<f64> {
    if seed_count == 0 {
        return Err(SimError::InvalidConfig("seed_count must be >= 1".into()));
    }
    let finals: Result<Vec<f64>> = (0..seed_count)
        .into_par_iter()
        .map(|seed| {
            let mut c = cfg.clone();
            c.seed = seed;
            Ok(run_scenario(&c)?.env_final.get(0, 1).norm())
        })
        .collect();
    let finals = finals?;
    Ok(finals.iter().sum::<f64>() / seed_count as f64)
}

/// One row of a sweep summary.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub rate: f64,
    pub r_squared: f64,
}

/// Set one named coupling on a copy of the configuration.
pub fn with_coupling(cfg: &ScenarioConfig, name: &str, value: f64) -> Result<ScenarioConfig> {
    let mut out = cfg.clone();
    match name {
        "kappa" => out.couplings.kappa = value,
        "mu" => out.couplings.mu = value,
        "g" => out.couplings.g = value,
        "j" => out.couplings.j = value,
        "lambda" => out.couplings.lambda = value,
        "mass" => out.couplings.mass = value,
        _ => {
            return Err(SimError::InvalidConfig(format!(
                "unknown sweep parameter `{name}`"
            )))
        }
    }
    out.validate()?;
    Ok(out)
}

/// Sweep a coupling and fit the environment decoherence rate at each value.
///
/// The sweep always uses the continuous read-out realization so the
/// off-diagonal decay is a clean exponential suitable for a log-linear fit.
pub fn sweep_decoherence(
    cfg: &ScenarioConfig,
    param: &str,
    values: &[f64],
) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(SimError::InvalidConfig("empty sweep grid".into()));
    }
    let rows: Result<Vec<SweepRow>> = values
        .par_iter()
        .map(|&value| {
            let mut c = with_coupling(cfg, param, value)?;
            c.readout.mode = ReadoutMode::Continuous;
            let out = run_scenario(&c)?;
            let mags = out.record.series_named("offdiag_env_abs")?;
            let (rate, r_squared) = fit_decoherence_rate(&out.record.times, mags)?;
            Ok(SweepRow {
                value,
                rate,
                r_squared,
            })
        })
        .collect();
    rows
}
