//! Operator-valued generator catalogue: reasoning penalties, transverse-field
//! Ising learning, pointer-coupled sensing, clock-encoded recursion, and
//! driven environments.

use num_complex::Complex64 as C64;

use crate::error::{Result, SimError};
use crate::generator::{GeneratorKind, GeneratorSpec, Side};
use crate::quantum::clock::{feynman_kitaev, ClockForm};
use crate::tensor::{pauli, ComplexMatrix, HermitianOperator};

/// Tolerance for projector validation in the reasoning penalty.
pub const REASONING_PROJECTOR_TOL: f64 = 1e-9;

/// Build the time-independent operator for a quantum-side generator spec,
/// evaluating any control schedule at time `t`.
pub fn build_quantum_generator(spec: &GeneratorSpec, t: f64) -> Result<HermitianOperator> {
    spec.require_side(Side::Quantum)?;
    match spec.kind {
        GeneratorKind::Reasoning => build_reasoning(spec),
        GeneratorKind::Learning => build_learning(spec),
        GeneratorKind::Sensing => build_sensing(spec),
        GeneratorKind::Recursion => build_recursion(spec),
        GeneratorKind::Environment => build_environment(spec, t),
        GeneratorKind::Induction => Err(SimError::UnknownKind {
            kind: "Induction".into(),
            side: "Quantum (induction is a relative-entropy cost functional, not an operator; \
                   see the induction module)"
                .into(),
        }),
    }
}

/// Penalty `sum_i mu (I - Pi_i)` over validated orthogonal projectors.
///
/// Each projector must be Hermitian and idempotent; the family need not
/// resolve the identity (constraints can overlap in general, but each is
/// checked individually).
fn build_reasoning(spec: &GeneratorSpec) -> Result<HermitianOperator> {
    let mu = spec.positive_real("mu")?;
    let projectors = spec.matrix_list("projectors")?;
    if projectors.is_empty() {
        return Err(SimError::MissingParameter("projectors (empty list)".into()));
    }
    let dim = projectors[0].rows();
    let mut h = ComplexMatrix::zeros(dim, dim);
    for p in &projectors {
        if p.rows() != dim || p.cols() != dim {
            return Err(SimError::DimensionMismatch(
                "reasoning projectors must share one dimension".into(),
            ));
        }
        let herm_dev = p.hermiticity_deviation();
        if herm_dev > REASONING_PROJECTOR_TOL {
            return Err(SimError::NonProjector { deviation: herm_dev });
        }
        let idem = p.matmul(p)?.sub(p)?.frobenius_norm();
        if idem > REASONING_PROJECTOR_TOL {
            return Err(SimError::NonProjector { deviation: idem });
        }
        h = h.add(&ComplexMatrix::identity(dim).sub(p)?.scale(C64::new(mu, 0.0)))?;
    }
    HermitianOperator::new(h)
}

/// Transverse-field Ising landscape on a qubit chain:
/// `-J sum_{l} Z_l Z_{l+1} - g sum_l X_l`.
fn build_learning(spec: &GeneratorSpec) -> Result<HermitianOperator> {
    let n = spec.int("qubits")?;
    if n < 1 {
        return Err(SimError::NonpositiveParameter {
            name: "qubits".into(),
            value: n as f64,
        });
    }
    let n = n as usize;
    let j = spec.real("coupling")?;
    let g = spec.real("field")?;
    let layout = vec![2usize; n];
    let dim = 1usize << n;
    let mut h = ComplexMatrix::zeros(dim, dim);
    let zmat = pauli::z();
    let xmat = pauli::x();
    for l in 0..n.saturating_sub(1) {
        let zz = pauli::embed(
            &layout,
            &[(l, zmat.matrix()), (l + 1, zmat.matrix())],
        )?;
        h = h.add(&zz.scale(C64::new(-j, 0.0)))?;
    }
    for l in 0..n {
        let x = pauli::embed(&layout, &[(l, xmat.matrix())])?;
        h = h.add(&x.scale(C64::new(-g, 0.0)))?;
    }
    HermitianOperator::new(h)
}

/// Pointer-copy coupling `kappa (|1><0|_m (x) O_E + h.c.)` embedded in a
/// qubit register. The pointer factor must be a qubit; the environment
/// observable acts on the environment factor.
fn build_sensing(spec: &GeneratorSpec) -> Result<HermitianOperator> {
    let kappa = spec.positive_real("kappa")?;
    let layout: Vec<usize> = spec
        .real_vec("layout")?
        .iter()
        .map(|&d| d as usize)
        .collect();
    let pointer = spec.int("pointer")? as usize;
    let environment = spec.int("environment")? as usize;
    let observable = spec.matrix("observable")?;
    if pointer >= layout.len() || environment >= layout.len() || pointer == environment {
        return Err(SimError::InvalidFactorIndex {
            index: pointer.max(environment),
            count: layout.len(),
        });
    }
    if layout[pointer] != 2 {
        return Err(SimError::DimensionMismatch(
            "sensing pointer factor must be a qubit".into(),
        ));
    }
    if observable.rows() != layout[environment] || observable.cols() != layout[environment] {
        return Err(SimError::DimensionMismatch(
            "sensing observable must act on the environment factor".into(),
        ));
    }
    let half = pauli::embed(&layout, &[(pointer, &pauli::raise()), (environment, &observable)])?;
    let h = half
        .add(&half.conjugate_transpose())?
        .scale(C64::new(kappa, 0.0));
    HermitianOperator::new(h)
}

/// Clock-register recursion Hamiltonian from a history-state spec.
///
/// Set int parameter `literal_hopping` to 1 to keep only the hopping terms.
fn build_recursion(spec: &GeneratorSpec) -> Result<HermitianOperator> {
    let history = spec.history("history")?;
    let form = match spec.params.get("literal_hopping") {
        Some(_) if spec.int("literal_hopping")? != 0 => ClockForm::LiteralHopping,
        _ => ClockForm::Completed,
    };
    feynman_kitaev(&history, form)
}

/// Bare environment operator plus a schedule-driven control term:
/// `H_bare - u(t) F`.
fn build_environment(spec: &GeneratorSpec, t: f64) -> Result<HermitianOperator> {
    let bare = spec.matrix("bare")?;
    let mut h = bare.clone();
    if spec.params.contains_key("drive_operator") {
        let f = spec.matrix("drive_operator")?;
        if f.rows() != bare.rows() || f.cols() != bare.cols() {
            return Err(SimError::DimensionMismatch(
                "drive operator must match the bare environment dimension".into(),
            ));
        }
        let u = spec.schedule_or_zero("drive")?.value_at(t);
        h = h.add(&f.scale(C64::new(-u, 0.0)))?;
    }
    HermitianOperator::new(h)
}
