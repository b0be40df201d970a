//! Numerical Poisson brackets by central finite differences.

use super::state::PhaseSpaceState;
use crate::error::{Result, SimError};

pub type ObservableFn<'a> = &'a (dyn Fn(&PhaseSpaceState) -> f64 + Sync);

fn perturbed(s: &PhaseSpaceState, coord: usize, momentum: bool, delta: f64) -> PhaseSpaceState {
    let mut out = s.clone();
    if momentum {
        out.p[coord] += delta;
    } else {
        out.q[coord] += delta;
    }
    out
}

fn central_diff(
    f: ObservableFn,
    s: &PhaseSpaceState,
    coord: usize,
    momentum: bool,
    step: f64,
) -> Result<f64> {
    let plus = f(&perturbed(s, coord, momentum, step));
    let minus = f(&perturbed(s, coord, momentum, -step));
    if !plus.is_finite() || !minus.is_finite() {
        return Err(SimError::NonFinite("observable near probe state".into()));
    }
    Ok((plus - minus) / (2.0 * step))
}

/// `{f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)` estimated with
/// central differences of width `step`.
pub fn poisson_bracket(
    f: ObservableFn,
    g: ObservableFn,
    at: &PhaseSpaceState,
    step: f64,
) -> Result<f64> {
    if step <= 0.0 {
        return Err(SimError::NonpositiveParameter {
            name: "step".into(),
            value: step,
        });
    }
    let mut acc = 0.0;
    for i in 0..at.dof() {
        let df_dq = central_diff(f, at, i, false, step)?;
        let dg_dp = central_diff(g, at, i, true, step)?;
        let df_dp = central_diff(f, at, i, true, step)?;
        let dg_dq = central_diff(g, at, i, false, step)?;
        acc += df_dq * dg_dp - df_dp * dg_dq;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn state() -> PhaseSpaceState {
        PhaseSpaceState::new(vec![0.3, -1.2], vec![0.7, 0.1]).unwrap()
    }

    #[test]
    fn canonical_pair_brackets_to_one() {
        let q0 = |s: &PhaseSpaceState| s.q[0];
        let p0 = |s: &PhaseSpaceState| s.p[0];
        let v = poisson_bracket(&q0, &p0, &state(), 1e-5).unwrap();
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn commuting_coordinates_bracket_to_zero() {
        let q0 = |s: &PhaseSpaceState| s.q[0];
        let q1 = |s: &PhaseSpaceState| s.q[1];
        let v = poisson_bracket(&q0, &q1, &state(), 1e-5).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-8);
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let f = |s: &PhaseSpaceState| s.q[0] * s.p[1] + s.q[1].sin();
        let g = |s: &PhaseSpaceState| s.p[0] * s.p[0] + s.q[0] * s.q[1];
        let st = state();
        let fg = poisson_bracket(&f, &g, &st, 1e-5).unwrap();
        let gf = poisson_bracket(&g, &f, &st, 1e-5).unwrap();
        assert_abs_diff_eq!(fg, -gf, epsilon = 2e-8);
    }

    #[test]
    fn nonfinite_observable_is_an_error() {
        // sqrt goes NaN just below the probe state.
        let f = |s: &PhaseSpaceState| (s.q[0] - 0.3).sqrt();
        let g = |s: &PhaseSpaceState| s.p[0];
        assert!(matches!(
            poisson_bracket(&f, &g, &state(), 1e-5).unwrap_err(),
            SimError::NonFinite(_)
        ));
    }
}
