//! Projective measurement with seeded Born-rule sampling.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SimError};
use crate::tensor::{ComplexMatrix, DensityOperator};

/// Tolerance for projector idempotence, orthogonality, and completeness.
pub const PROJECTOR_TOL: f64 = 1e-9;

/// Outcome of one projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    pub outcome_index: usize,
    pub probability: f64,
    pub post_state: DensityOperator,
    pub seed: u64,
}

/// Check that the operators form an orthogonal projective measurement
/// resolving the identity.
pub fn validate_projectors(projectors: &[ComplexMatrix], dim: usize) -> Result<()> {
    if projectors.is_empty() {
        return Err(SimError::NonResolutionOfIdentity { deviation: 1.0 });
    }
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for p in projectors {
        if p.rows() != dim || p.cols() != dim {
            return Err(SimError::DimensionMismatch(format!(
                "projector is {}x{}, state dim {dim}",
                p.rows(),
                p.cols()
            )));
        }
        let herm_dev = p.hermiticity_deviation();
        if herm_dev > PROJECTOR_TOL {
            return Err(SimError::NonProjector { deviation: herm_dev });
        }
        let idem = p.matmul(p)?.sub(p)?.frobenius_norm();
        if idem > PROJECTOR_TOL {
            return Err(SimError::NonProjector { deviation: idem });
        }
        sum = sum.add(p)?;
    }
    for (i, a) in projectors.iter().enumerate() {
        for b in projectors.iter().skip(i + 1) {
            let cross = a.matmul(b)?.frobenius_norm();
            if cross > PROJECTOR_TOL {
                return Err(SimError::NonProjector { deviation: cross });
            }
        }
    }
    let complete = sum.sub(&ComplexMatrix::identity(dim))?.frobenius_norm();
    if complete > PROJECTOR_TOL {
        return Err(SimError::NonResolutionOfIdentity {
            deviation: complete,
        });
    }
    Ok(())
}

/// Born-rule sample on a raw density matrix with a caller-owned RNG.
///
/// Returns the outcome index, its probability, and the renormalized
/// post-measurement matrix `P rho P / p`. Projectors must already be
/// validated.
pub fn sample_outcome(
    rho: &ComplexMatrix,
    projectors: &[ComplexMatrix],
    rng: &mut ChaCha8Rng,
) -> Result<(usize, f64, ComplexMatrix)> {
    let mut probs = Vec::with_capacity(projectors.len());
    for p in projectors {
        let pr = p.matmul(rho)?.trace().re;
        if !pr.is_finite() {
            return Err(SimError::NonFinite("measurement probability".into()));
        }
        probs.push(pr.max(0.0));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(SimError::InvalidProbability(format!(
            "outcome probabilities sum to {total}"
        )));
    }
    let draw: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut outcome = probs.len() - 1;
    for (k, pr) in probs.iter().enumerate() {
        acc += pr;
        if draw < acc {
            outcome = k;
            break;
        }
    }
    let p = &projectors[outcome];
    let prob = probs[outcome];
    if prob <= 0.0 {
        return Err(SimError::InvalidProbability(
            "sampled outcome has zero probability".into(),
        ));
    }
    let post = p
        .matmul(rho)?
        .matmul(p)?
        .scale(C64::new(1.0 / prob, 0.0));
    Ok((outcome, prob, post))
}

/// Validated projective measurement of a density operator with a fresh
/// seeded RNG. Deterministic for a fixed `(rho, projectors, seed)`.
pub fn projective_measure(
    rho: &DensityOperator,
    projectors: &[ComplexMatrix],
    seed: u64,
) -> Result<MeasurementRecord> {
    validate_projectors(projectors, rho.dim())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (outcome_index, probability, post) = sample_outcome(rho.matrix(), projectors, &mut rng)?;
    Ok(MeasurementRecord {
        outcome_index,
        probability,
        post_state: DensityOperator::new(post, rho.factor_dims().to_vec())?,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::pauli;
    use approx::assert_abs_diff_eq;

    fn z_projectors() -> Vec<ComplexMatrix> {
        vec![pauli::basis_projector(2, 0), pauli::basis_projector(2, 1)]
    }

    #[test]
    fn deterministic_outcome_on_eigenstate() {
        let rho = DensityOperator::pure_state(&pauli::ket(2, 1), vec![2]).unwrap();
        for seed in 0..5 {
            let rec = projective_measure(&rho, &z_projectors(), seed).unwrap();
            assert_eq!(rec.outcome_index, 1);
            assert_abs_diff_eq!(rec.probability, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn same_seed_same_outcome() {
        let rho = DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap();
        let a = projective_measure(&rho, &z_projectors(), 7).unwrap();
        let b = projective_measure(&rho, &z_projectors(), 7).unwrap();
        assert_eq!(a.outcome_index, b.outcome_index);
    }

    #[test]
    fn born_frequencies_approach_half() {
        // |+> measured in Z: p(0) = p(1) = 1/2. Binomial(4000, 1/2) has
        // sigma ~ 31.6; a 5-sigma band is [1842, 2158].
        let rho = DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap();
        let projs = z_projectors();
        let mut zeros = 0usize;
        for seed in 0..4000u64 {
            if projective_measure(&rho, &projs, seed).unwrap().outcome_index == 0 {
                zeros += 1;
            }
        }
        assert!((1842..=2158).contains(&zeros), "zeros = {zeros}");
    }

    #[test]
    fn post_state_is_projected_and_renormalized() {
        let rho = DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap();
        let rec = projective_measure(&rho, &z_projectors(), 3).unwrap();
        let m = rec.post_state.matrix();
        // Post state is the basis state matching the outcome.
        assert_abs_diff_eq!(m.get(rec.outcome_index, rec.outcome_index).re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.get(0, 1).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_projector() {
        let rho = DensityOperator::pure_state(&pauli::ket(2, 0), vec![2]).unwrap();
        let half = ComplexMatrix::identity(2).scale(C64::new(0.5, 0.0));
        let bad = vec![half.clone(), half];
        assert!(matches!(
            projective_measure(&rho, &bad, 0).unwrap_err(),
            SimError::NonProjector { .. }
        ));
    }

    #[test]
    fn rejects_incomplete_family() {
        let rho = DensityOperator::pure_state(&pauli::ket(2, 0), vec![2]).unwrap();
        let only_zero = vec![pauli::basis_projector(2, 0)];
        assert!(matches!(
            projective_measure(&rho, &only_zero, 0).unwrap_err(),
            SimError::NonResolutionOfIdentity { .. }
        ));
    }

    #[test]
    fn rejects_non_orthogonal_family() {
        let rho = DensityOperator::pure_state(&pauli::ket(2, 0), vec![2]).unwrap();
        let plus = DensityOperator::pure_state(&pauli::ket_plus(), vec![2]).unwrap();
        let bad = vec![pauli::basis_projector(2, 0), plus.matrix().clone()];
        assert!(projective_measure(&rho, &bad, 0).is_err());
    }
}
