//! Classical Hamiltonians and the generator catalogue builders.
//!
//! Penalty-type generators follow the `mu (1 - phi)` convention so the ground
//! set coincides with the constraint-satisfying set; Boolean indicators are
//! smoothed with a logistic of width `sigma` for dynamics while exact
//! (unsmoothed) evaluation is used for satisfaction checks.

use std::sync::Arc;

use super::state::PhaseSpaceState;
use crate::error::{Result, SimError};
use crate::generator::{
    GeneratorKind, GeneratorSpec, PredictorForm, Schedule, Side, ThresholdClause,
};

/// Default logistic / Gaussian smoothing width for Boolean indicators.
pub const DEFAULT_SMOOTHING_WIDTH: f64 = 0.05;

pub type TermFn = Arc<dyn Fn(&PhaseSpaceState, f64) -> f64 + Send + Sync>;
pub type PotentialFn = Arc<dyn Fn(&[f64], f64) -> f64 + Send + Sync>;
pub type GradientFn = Arc<dyn Fn(&[f64], f64) -> Vec<f64> + Send + Sync>;

/// Separable structure `H = sum_i p_i^2 / 2 m_i + V(q, t)` needed by the
/// leapfrog integrator. A mass of `f64::INFINITY` freezes a coordinate.
#[derive(Clone)]
pub struct SeparableStructure {
    pub masses: Vec<f64>,
    pub potential: PotentialFn,
    pub gradient: GradientFn,
}

/// Total-energy function assembled from named terms.
#[derive(Clone)]
pub struct ClassicalHamiltonian {
    terms: Vec<(String, TermFn)>,
    structure: Option<SeparableStructure>,
    /// Coordinates reflected at zero (continuous stack depth).
    reflective: Vec<usize>,
    /// Linear momentum damping coefficient; zero keeps the flow Hamiltonian.
    damping: f64,
}

impl std::fmt::Debug for ClassicalHamiltonian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassicalHamiltonian")
            .field("terms", &self.term_names())
            .field("separable", &self.structure.is_some())
            .field("reflective", &self.reflective)
            .field("damping", &self.damping)
            .finish()
    }
}

impl ClassicalHamiltonian {
    pub fn from_parts(
        terms: Vec<(String, TermFn)>,
        structure: Option<SeparableStructure>,
    ) -> Self {
        Self {
            terms,
            structure,
            reflective: Vec::new(),
            damping: 0.0,
        }
    }

    pub fn with_reflective(mut self, coords: Vec<usize>) -> Self {
        self.reflective = coords;
        self
    }

    /// Enable linear momentum damping (dissipative descent mode).
    pub fn with_damping(mut self, gamma: f64) -> Self {
        self.damping = gamma;
        self
    }

    pub fn term_names(&self) -> Vec<String> {
        self.terms.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn terms(&self) -> &[(String, TermFn)] {
        &self.terms
    }

    pub fn structure(&self) -> Option<&SeparableStructure> {
        self.structure.as_ref()
    }

    pub fn reflective(&self) -> &[usize] {
        &self.reflective
    }

    pub fn damping(&self) -> f64 {
        self.damping
    }

    /// Total energy at time zero.
    pub fn evaluate(&self, s: &PhaseSpaceState) -> f64 {
        self.evaluate_at(s, 0.0)
    }

    pub fn evaluate_at(&self, s: &PhaseSpaceState, t: f64) -> f64 {
        self.terms.iter().map(|(_, f)| f(s, t)).sum()
    }

    pub fn term_energies(&self, s: &PhaseSpaceState, t: f64) -> Vec<(String, f64)> {
        self.terms
            .iter()
            .map(|(n, f)| (n.clone(), f(s, t)))
            .collect()
    }

    /// Merge generators into one Hamiltonian. All must be separable with
    /// matching mass vectors (terms are summed, potentials added).
    pub fn sum(parts: Vec<ClassicalHamiltonian>) -> Result<Self> {
        let mut terms = Vec::new();
        let mut structures = Vec::new();
        let mut reflective = Vec::new();
        for part in parts {
            terms.extend(part.terms);
            reflective.extend(part.reflective);
            match part.structure {
                Some(s) => structures.push(s),
                None => return Err(SimError::NonSeparable),
            }
        }
        let masses = structures[0].masses.clone();
        for s in &structures[1..] {
            if s.masses.len() != masses.len() {
                return Err(SimError::DimensionMismatch(
                    "cannot sum generators over different phase spaces".into(),
                ));
            }
        }
        // Effective mass per coordinate: finite masses must agree; a frozen
        // (infinite-mass) part defers to any finite one.
        let mut merged = masses;
        for s in &structures[1..] {
            for (m, &other) in merged.iter_mut().zip(&s.masses) {
                if other.is_finite() {
                    if m.is_finite() && (*m - other).abs() > 1e-12 {
                        return Err(SimError::DimensionMismatch(
                            "conflicting masses for a shared coordinate".into(),
                        ));
                    }
                    *m = other;
                }
            }
        }
        let pots: Vec<PotentialFn> = structures.iter().map(|s| s.potential.clone()).collect();
        let grads: Vec<GradientFn> = structures.iter().map(|s| s.gradient.clone()).collect();
        let n = merged.len();
        let potential: PotentialFn = {
            let pots = pots.clone();
            Arc::new(move |q, t| pots.iter().map(|p| p(q, t)).sum())
        };
        let gradient: GradientFn = Arc::new(move |q, t| {
            let mut acc = vec![0.0; n];
            for g in &grads {
                for (a, v) in acc.iter_mut().zip(g(q, t)) {
                    *a += v;
                }
            }
            acc
        });
        reflective.sort_unstable();
        reflective.dedup();
        Ok(Self {
            terms,
            structure: Some(SeparableStructure {
                masses: merged,
                potential,
                gradient,
            }),
            reflective,
            damping: 0.0,
        })
    }
}

/// Kinetic energy for a separable structure; frozen coordinates contribute 0.
pub fn kinetic_energy(masses: &[f64], p: &[f64]) -> f64 {
    masses
        .iter()
        .zip(p)
        .filter(|(m, _)| m.is_finite())
        .map(|(m, pi)| pi * pi / (2.0 * m))
        .sum()
}

/// Build one classical generator from its declarative spec.
pub fn build_classical_generator(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    spec.require_side(Side::Classical)?;
    match spec.kind {
        GeneratorKind::Induction => build_induction(spec),
        GeneratorKind::Reasoning => build_reasoning(spec),
        GeneratorKind::Recursion => build_recursion(spec),
        GeneratorKind::Learning => build_learning(spec),
        GeneratorKind::Sensing => build_sensing(spec),
        GeneratorKind::Environment => build_environment(spec),
    }
}

fn predictor_eval(form: PredictorForm, theta: &[f64], s: &[f64]) -> f64 {
    let dot: f64 = theta.iter().zip(s).map(|(a, b)| a * b).sum();
    match form {
        PredictorForm::Linear => dot,
        PredictorForm::Tanh => dot.tanh(),
    }
}

fn predictor_grad(form: PredictorForm, theta: &[f64], s: &[f64]) -> Vec<f64> {
    let dot: f64 = theta.iter().zip(s).map(|(a, b)| a * b).sum();
    let outer = match form {
        PredictorForm::Linear => 1.0,
        PredictorForm::Tanh => 1.0 - dot.tanh() * dot.tanh(),
    };
    s.iter().map(|si| outer * si).collect()
}

/// Weighted prediction error plus parameter kinetic energy.
fn build_induction(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    let dataset = spec.dataset("dataset")?;
    let weights = spec.real_vec("weights")?;
    let masses = spec.real_vec("masses")?;
    let form = spec.predictor("predictor")?;
    if weights.len() != dataset.len() {
        return Err(SimError::DimensionMismatch(
            "one weight per datum required".into(),
        ));
    }
    for (i, m) in masses.iter().enumerate() {
        if *m <= 0.0 {
            return Err(SimError::NonpositiveParameter {
                name: format!("masses[{i}]"),
                value: *m,
            });
        }
    }
    let loss = {
        let dataset = dataset.clone();
        let weights = weights.clone();
        move |theta: &[f64]| -> f64 {
            dataset
                .iter()
                .zip(&weights)
                .map(|((s, r), w)| {
                    let e = predictor_eval(form, theta, s) - r;
                    0.5 * w * e * e
                })
                .sum()
        }
    };
    let loss_grad = {
        let dataset = dataset.clone();
        let weights = weights.clone();
        let n = masses.len();
        move |theta: &[f64]| -> Vec<f64> {
            let mut acc = vec![0.0; n];
            for ((s, r), w) in dataset.iter().zip(&weights) {
                let e = predictor_eval(form, theta, s) - r;
                for (a, g) in acc.iter_mut().zip(predictor_grad(form, theta, s)) {
                    *a += w * e * g;
                }
            }
            acc
        }
    };
    let masses_t = masses.clone();
    let loss_t = loss.clone();
    let term: TermFn = Arc::new(move |s: &PhaseSpaceState, _t| {
        loss_t(&s.q) + kinetic_energy(&masses_t, &s.p)
    });
    let structure = SeparableStructure {
        masses,
        potential: Arc::new(move |q, _| loss(q)),
        gradient: Arc::new(move |q, _| loss_grad(q)),
    };
    Ok(ClassicalHamiltonian::from_parts(
        vec![("induction".into(), term)],
        Some(structure),
    ))
}

/// Smoothed clause penalties `mu_alpha (1 - phi_alpha)`, one term per clause.
fn build_reasoning(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    let clauses = spec.clauses("clauses")?;
    let penalties = spec.real_vec("penalties")?;
    let width = spec.real_or("width", DEFAULT_SMOOTHING_WIDTH)?;
    if clauses.len() != penalties.len() {
        return Err(SimError::DimensionMismatch(
            "one penalty per clause required".into(),
        ));
    }
    for (i, mu) in penalties.iter().enumerate() {
        if *mu <= 0.0 {
            return Err(SimError::NonpositiveParameter {
                name: format!("penalties[{i}]"),
                value: *mu,
            });
        }
    }
    let dof = clauses.iter().map(|c| c.coord() + 1).max().unwrap_or(1);
    let mut terms: Vec<(String, TermFn)> = Vec::new();
    for (i, (clause, mu)) in clauses.iter().zip(&penalties).enumerate() {
        let clause = *clause;
        let mu = *mu;
        terms.push((
            format!("reasoning_clause_{i}"),
            Arc::new(move |s: &PhaseSpaceState, _t| mu * (1.0 - clause.smoothed(&s.q, width))),
        ));
    }
    let clauses_g = clauses.clone();
    let penalties_g = penalties.clone();
    let structure = SeparableStructure {
        masses: vec![f64::INFINITY; dof],
        potential: Arc::new(move |q, _| {
            clauses
                .iter()
                .zip(&penalties)
                .map(|(c, mu)| mu * (1.0 - c.smoothed(q, width)))
                .sum()
        }),
        gradient: Arc::new(move |q, _| {
            let mut acc = vec![0.0; dof];
            for (c, mu) in clauses_g.iter().zip(&penalties_g) {
                acc[c.coord()] -= mu * c.smoothed_grad(q, width);
            }
            acc
        }),
    };
    Ok(ClassicalHamiltonian::from_parts(terms, Some(structure)))
}

/// Exact (unsmoothed) reasoning penalty, for ground-set checks.
pub fn reasoning_penalty_exact(
    clauses: &[ThresholdClause],
    penalties: &[f64],
    q: &[f64],
) -> f64 {
    clauses
        .iter()
        .zip(penalties)
        .map(|(c, mu)| if c.satisfied(q) { 0.0 } else { *mu })
        .sum()
}

/// Harmonic stack-depth well `p^2/2m_s + kappa_s q^2/2`, reflected at zero.
fn build_recursion(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    let mass = spec.positive_real("mass")?;
    let spring = spec.positive_real("spring")?;
    let term: TermFn = Arc::new(move |s: &PhaseSpaceState, _t| {
        s.p[0] * s.p[0] / (2.0 * mass) + 0.5 * spring * s.q[0] * s.q[0]
    });
    let structure = SeparableStructure {
        masses: vec![mass],
        potential: Arc::new(move |q, _| 0.5 * spring * q[0] * q[0]),
        gradient: Arc::new(move |q, _| vec![spring * q[0]]),
    };
    Ok(
        ClassicalHamiltonian::from_parts(vec![("recursion".into(), term)], Some(structure))
            .with_reflective(vec![0]),
    )
}

/// Parameter kinetic energy plus scaled loss landscape.
fn build_learning(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    let masses = spec.real_vec("masses")?;
    let lambda = spec.positive_real("lambda")?;
    let loss = spec.loss("loss")?;
    for (i, m) in masses.iter().enumerate() {
        if *m <= 0.0 {
            return Err(SimError::NonpositiveParameter {
                name: format!("masses[{i}]"),
                value: *m,
            });
        }
    }
    let masses_k = masses.clone();
    let kinetic: TermFn = Arc::new(move |s: &PhaseSpaceState, _t| kinetic_energy(&masses_k, &s.p));
    let loss_t = loss.clone();
    let loss_term: TermFn =
        Arc::new(move |s: &PhaseSpaceState, _t| lambda * loss_t.evaluate(&s.q));
    let loss_g = loss.clone();
    let structure = SeparableStructure {
        masses,
        potential: Arc::new(move |q, _| lambda * loss.evaluate(q)),
        gradient: Arc::new(move |q, _| {
            loss_g.gradient(q).into_iter().map(|g| lambda * g).collect()
        }),
    };
    Ok(ClassicalHamiltonian::from_parts(
        vec![
            ("learning_kinetic".into(), kinetic),
            ("learning_loss".into(), loss_term),
        ],
        Some(structure),
    ))
}

/// Normalized Gaussian used in place of the sensing delta coupling.
pub fn gaussian_kernel(x: f64, width: f64) -> f64 {
    let norm = 1.0 / (width * (2.0 * std::f64::consts::PI).sqrt());
    norm * (-x * x / (2.0 * width * width)).exp()
}

/// Copy coupling `kappa P g_sigma(q_sens - q_env)` over `(q_sens, q_env)`.
///
/// Linear in the sensor momentum, so this generator carries no separable
/// structure and cannot be fed to the leapfrog on its own; evaluation and
/// Poisson brackets are fully supported.
fn build_sensing(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    let kappa = spec.positive_real("kappa")?;
    let width = spec.real_or("width", DEFAULT_SMOOTHING_WIDTH)?;
    if width <= 0.0 {
        return Err(SimError::NonpositiveParameter {
            name: "width".into(),
            value: width,
        });
    }
    let term: TermFn = Arc::new(move |s: &PhaseSpaceState, _t| {
        kappa * s.p[0] * gaussian_kernel(s.q[0] - s.q[1], width)
    });
    Ok(ClassicalHamiltonian::from_parts(
        vec![("sensing".into(), term)],
        None,
    ))
}

/// Harmonic bare environment with a piecewise-constant drive on the
/// generalized force `F = grad_q H_bare`.
fn build_environment(spec: &GeneratorSpec) -> Result<ClassicalHamiltonian> {
    let masses = spec.real_vec("masses")?;
    let springs = spec.real_vec("springs")?;
    let control: Schedule = spec.schedule_or_zero("control")?;
    if masses.len() != springs.len() {
        return Err(SimError::DimensionMismatch(
            "one spring per environment coordinate required".into(),
        ));
    }
    for (i, m) in masses.iter().enumerate() {
        if *m <= 0.0 {
            return Err(SimError::NonpositiveParameter {
                name: format!("masses[{i}]"),
                value: *m,
            });
        }
    }
    let masses_t = masses.clone();
    let springs_t = springs.clone();
    let control_t = control.clone();
    let term: TermFn = Arc::new(move |s: &PhaseSpaceState, t| {
        let bare: f64 = kinetic_energy(&masses_t, &s.p)
            + springs_t
                .iter()
                .zip(&s.q)
                .map(|(k, q)| 0.5 * k * q * q)
                .sum::<f64>();
        let force: f64 = springs_t.iter().zip(&s.q).map(|(k, q)| k * q).sum();
        bare - control_t.value_at(t) * force
    });
    let springs_p = springs.clone();
    let control_p = control.clone();
    let structure = SeparableStructure {
        masses,
        potential: Arc::new(move |q, t| {
            let u = control_p.value_at(t);
            springs_p
                .iter()
                .zip(q)
                .map(|(k, qi)| 0.5 * k * qi * qi - u * k * qi)
                .sum()
        }),
        gradient: Arc::new(move |q, t| {
            let u = control.value_at(t);
            springs.iter().zip(q).map(|(k, qi)| k * (qi - u)).collect()
        }),
    };
    Ok(ClassicalHamiltonian::from_parts(
        vec![("environment".into(), term)],
        Some(structure),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{LossForm, ParamValue};
    use approx::assert_abs_diff_eq;

    fn state(q: &[f64], p: &[f64]) -> PhaseSpaceState {
        PhaseSpaceState::new(q.to_vec(), p.to_vec()).unwrap()
    }

    #[test]
    fn induction_single_datum_hand_value() {
        // One datum (s=1, r=0), w=1, linear f = theta * s, theta=2, p=0, m=1.
        let spec = GeneratorSpec::new(GeneratorKind::Induction, Side::Classical)
            .with("dataset", ParamValue::Dataset(vec![(vec![1.0], 0.0)]))
            .with("weights", ParamValue::RealVec(vec![1.0]))
            .with("masses", ParamValue::RealVec(vec![1.0]))
            .with("predictor", ParamValue::Predictor(PredictorForm::Linear));
        let h = build_classical_generator(&spec).unwrap();
        assert_abs_diff_eq!(h.evaluate(&state(&[2.0], &[0.0])), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn recursion_zero_state_has_zero_energy() {
        let spec = GeneratorSpec::new(GeneratorKind::Recursion, Side::Classical)
            .with("mass", ParamValue::Real(1.3))
            .with("spring", ParamValue::Real(0.7));
        let h = build_classical_generator(&spec).unwrap();
        assert_eq!(h.evaluate(&state(&[0.0], &[0.0])), 0.0);
    }

    #[test]
    fn reasoning_vanishes_on_satisfying_state() {
        let spec = GeneratorSpec::new(GeneratorKind::Reasoning, Side::Classical)
            .with(
                "clauses",
                ParamValue::Clauses(vec![
                    ThresholdClause::GreaterThan { coord: 0, threshold: 0.0 },
                    ThresholdClause::GreaterThan { coord: 1, threshold: 0.0 },
                ]),
            )
            .with("penalties", ParamValue::RealVec(vec![1.0, 1.0]));
        let h = build_classical_generator(&spec).unwrap();
        // Smoothed penalty at (1,1) is exponentially small in 1/width.
        assert!(h.evaluate(&state(&[1.0, 1.0], &[0.0, 0.0])) < 1e-8);
        // Exact evaluation is exactly zero on the satisfying set.
        assert_eq!(
            reasoning_penalty_exact(
                &[
                    ThresholdClause::GreaterThan { coord: 0, threshold: 0.0 },
                    ThresholdClause::GreaterThan { coord: 1, threshold: 0.0 },
                ],
                &[1.0, 1.0],
                &[1.0, 1.0]
            ),
            0.0
        );
    }

    #[test]
    fn learning_hand_value() {
        let spec = GeneratorSpec::new(GeneratorKind::Learning, Side::Classical)
            .with("masses", ParamValue::RealVec(vec![1.0, 1.0]))
            .with("lambda", ParamValue::Real(1.0))
            .with(
                "loss",
                ParamValue::Loss(LossForm::Quadratic { target: vec![1.0, 1.0] }),
            );
        let h = build_classical_generator(&spec).unwrap();
        assert_abs_diff_eq!(
            h.evaluate(&state(&[0.0, 0.0], &[0.0, 0.0])),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn missing_parameter_is_reported() {
        let spec = GeneratorSpec::new(GeneratorKind::Recursion, Side::Classical)
            .with("mass", ParamValue::Real(1.0));
        assert!(matches!(
            build_classical_generator(&spec).unwrap_err(),
            SimError::MissingParameter(_)
        ));
    }

    #[test]
    fn nonpositive_mass_is_rejected() {
        let spec = GeneratorSpec::new(GeneratorKind::Recursion, Side::Classical)
            .with("mass", ParamValue::Real(-1.0))
            .with("spring", ParamValue::Real(1.0));
        assert!(matches!(
            build_classical_generator(&spec).unwrap_err(),
            SimError::NonpositiveParameter { .. }
        ));
    }

    #[test]
    fn quantum_side_spec_is_rejected() {
        let spec = GeneratorSpec::new(GeneratorKind::Recursion, Side::Quantum);
        assert!(matches!(
            build_classical_generator(&spec).unwrap_err(),
            SimError::SideMismatch { .. }
        ));
    }

    #[test]
    fn sensing_is_not_separable() {
        let spec = GeneratorSpec::new(GeneratorKind::Sensing, Side::Classical)
            .with("kappa", ParamValue::Real(0.4));
        let h = build_classical_generator(&spec).unwrap();
        assert!(h.structure().is_none());
    }

    #[test]
    fn evaluate_matches_term_sum() {
        let spec = GeneratorSpec::new(GeneratorKind::Learning, Side::Classical)
            .with("masses", ParamValue::RealVec(vec![2.0]))
            .with("lambda", ParamValue::Real(0.5))
            .with("loss", ParamValue::Loss(LossForm::Quadratic { target: vec![0.3] }));
        let h = build_classical_generator(&spec).unwrap();
        let s = state(&[1.1], &[0.4]);
        let total: f64 = h.term_energies(&s, 0.0).iter().map(|(_, v)| v).sum();
        assert_abs_diff_eq!(h.evaluate(&s), total, epsilon = 1e-12);
    }
}
