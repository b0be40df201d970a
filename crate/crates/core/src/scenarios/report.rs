//! Commutation-structure reports and decoherence-rate fitting.

use crate::classical::{poisson_bracket, PhaseSpaceState, TermFn};
use crate::error::{Result, SimError};
use crate::tensor::{commutator_norm, HermitianOperator};

/// Symmetric matrix of pairwise commutation magnitudes with row labels.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutationReport {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

impl CommutationReport {
    pub fn entry(&self, a: &str, b: &str) -> Result<f64> {
        let i = self
            .labels
            .iter()
            .position(|l| l == a)
            .ok_or_else(|| SimError::UnknownMetric(a.to_string()))?;
        let j = self
            .labels
            .iter()
            .position(|l| l == b)
            .ok_or_else(|| SimError::UnknownMetric(b.to_string()))?;
        Ok(self.matrix[i][j])
    }

    pub fn max_offdiagonal(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    worst = worst.max(*v);
                }
            }
        }
        worst
    }

    /// CSV rendering: header row of labels, then one row per term.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("term");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.matrix) {
            out.push_str(l);
            for v in row {
                out.push(',');
                out.push_str(&crate::record::format_float(*v));
            }
            out.push('\n');
        }
        out
    }
}

/// `|{H_i, H_j}_PB|` at a probe state for classical term functions.
pub fn commutation_report_classical(
    terms: &[(String, TermFn)],
    probe: &PhaseSpaceState,
    t: f64,
    step: f64,
) -> Result<CommutationReport> {
    if terms.is_empty() {
        return Err(SimError::InvalidConfig(
            "commutation report needs at least one term".into(),
        ));
    }
    let n = terms.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let fi = &terms[i].1;
            let fj = &terms[j].1;
            let gi = |s: &PhaseSpaceState| fi(s, t);
            let gj = |s: &PhaseSpaceState| fj(s, t);
            let v = poisson_bracket(&gi, &gj, probe, step)?.abs();
            matrix[i][j] = v;
            matrix[j][i] = v;
        }
    }
    Ok(CommutationReport {
        labels: terms.iter().map(|(n, _)| n.clone()).collect(),
        matrix,
    })
}

/// `||[H_i, H_j]||_F` for quantum terms.
pub fn commutation_report_quantum(
    terms: &[(String, HermitianOperator)],
) -> Result<CommutationReport> {
    if terms.is_empty() {
        return Err(SimError::InvalidConfig(
            "commutation report needs at least one term".into(),
        ));
    }
    let n = terms.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = commutator_norm(&terms[i].1, &terms[j].1)?;
            matrix[i][j] = v;
            matrix[j][i] = v;
        }
    }
    Ok(CommutationReport {
        labels: terms.iter().map(|(n, _)| n.clone()).collect(),
        matrix,
    })
}

/// Least-squares fit of `ln |rho01(t)| = a - rate * t`.
///
/// Returns the (negated) slope and the r-squared of the linear fit. Needs at
/// least 20 samples, all strictly above `1e-12`.
pub fn fit_decoherence_rate(times: &[f64], magnitudes: &[f64]) -> Result<(f64, f64)> {
    const MIN_POINTS: usize = 20;
    if times.len() != magnitudes.len() {
        return Err(SimError::DimensionMismatch(format!(
            "{} times vs {} magnitudes",
            times.len(),
            magnitudes.len()
        )));
    }
    if times.len() < MIN_POINTS {
        return Err(SimError::SeriesTooShort {
            len: times.len(),
            min: MIN_POINTS,
        });
    }
    let mut ys = Vec::with_capacity(magnitudes.len());
    for (index, &m) in magnitudes.iter().enumerate() {
        if !(m > 1e-12) {
            return Err(SimError::NonpositiveSample { value: m, index });
        }
        ys.push(m.ln());
    }
    let n = times.len() as f64;
    let mean_t: f64 = times.iter().sum::<f64>() / n;
    let mean_y: f64 = ys.iter().sum::<f64>() / n;
    let mut stt = 0.0;
    let mut sty = 0.0;
    let mut syy = 0.0;
    for (&t, &y) in times.iter().zip(&ys) {
        stt += (t - mean_t) * (t - mean_t);
        sty += (t - mean_t) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if stt == 0.0 {
        return Err(SimError::InvalidConfig(
            "decoherence fit needs distinct time points".into(),
        ));
    }
    let slope = sty / stt;
    // Constant series: perfect zero-rate fit.
    let r_squared = if syy == 0.0 { 1.0 } else { sty * sty / (stt * syy) };
    Ok((-slope, r_squared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::cagi::build_cagi_toy;
    use crate::scenarios::config::ScenarioConfig;
    use crate::scenarios::qagi::build_qagi_toy;
    use approx::assert_abs_diff_eq;

    #[test]
    fn synthetic_exponential_recovers_rate() {
        let gamma = 0.5;
        let times: Vec<f64> = (0..100).map(|k| k as f64 * 0.02).collect();
        let mags: Vec<f64> = times.iter().map(|t| 0.5 * (-2.0 * gamma * t).exp()).collect();
        let (rate, r2) = fit_decoherence_rate(&times, &mags).unwrap();
        assert_abs_diff_eq!(rate, 1.0, epsilon = 1e-3);
        assert!(r2 >= 0.9999);
    }

    #[test]
    fn constant_series_has_zero_rate() {
        let times: Vec<f64> = (0..30).map(|k| k as f64 * 0.1).collect();
        let mags = vec![0.5; 30];
        let (rate, _) = fit_decoherence_rate(&times, &mags).unwrap();
        assert_abs_diff_eq!(rate, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn short_series_is_rejected() {
        let times: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let mags = vec![0.5; 10];
        assert!(matches!(
            fit_decoherence_rate(&times, &mags).unwrap_err(),
            SimError::SeriesTooShort { .. }
        ));
    }

    #[test]
    fn nonpositive_sample_is_rejected() {
        let times: Vec<f64> = (0..30).map(|k| k as f64).collect();
        let mut mags = vec![0.5; 30];
        mags[7] = 0.0;
        assert!(matches!(
            fit_decoherence_rate(&times, &mags).unwrap_err(),
            SimError::NonpositiveSample { index: 7, .. }
        ));
    }

    #[test]
    fn single_quantum_term_reports_zero() {
        let toy = build_qagi_toy(&ScenarioConfig::qagi_defaults()).unwrap();
        let rep = commutation_report_quantum(&toy.terms[..1]).unwrap();
        assert_eq!(rep.matrix, vec![vec![0.0]]);
    }

    #[test]
    fn qagi_sensing_vs_reasoning_entry_exceeds_threshold() {
        let toy = build_qagi_toy(&ScenarioConfig::qagi_defaults()).unwrap();
        let rep = commutation_report_quantum(&toy.terms).unwrap();
        assert!(rep.entry("sensing", "reasoning").unwrap() > 0.1);
        assert!(rep.entry("learning_x", "learning_zz").unwrap() > 0.0);
    }

    #[test]
    fn cagi_terms_commute_at_smooth_states() {
        let toy = build_cagi_toy(&ScenarioConfig::cagi_defaults()).unwrap();
        // Smooth-region probe: theta deep in the logistic saturation, sensor
        // bit at its frozen value, nonzero weight momentum.
        let probe = crate::classical::PhaseSpaceState::new(
            vec![toy.q_e, 1.5],
            vec![0.0, 0.4],
        )
        .unwrap();
        let rep =
            commutation_report_classical(&toy.generator_terms(), &probe, 0.0, 1e-4).unwrap();
        assert!(rep.max_offdiagonal() <= 1e-6, "max {}", rep.max_offdiagonal());
    }
}
