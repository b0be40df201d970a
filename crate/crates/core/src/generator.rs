//! Declarative generator specifications shared by both engines.
//!
//! A [`GeneratorSpec`] names one Hamiltonian generator from the catalogue
//! (induction, reasoning, recursion, learning, sensing, environment) together
//! with the side it is built for and a loosely-typed parameter map that the
//! builders validate.

use std::collections::BTreeMap;

use crate::error::{Result, SimError};
use crate::quantum::clock::HistoryStateSpec;
use crate::tensor::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Induction,
    Reasoning,
    Recursion,
    Learning,
    Sensing,
    Environment,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Classical,
    Quantum,
}

/// Parametric predictor forms for classical induction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictorForm {
    /// `f_theta(s) = theta . s`
    Linear,
    /// `f_theta(s) = tanh(theta . s)`
    Tanh,
}

/// Atomic threshold clause over one configuration coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdClause {
    GreaterThan { coord: usize, threshold: f64 },
    LessThan { coord: usize, threshold: f64 },
}

impl ThresholdClause {
    pub fn coord(&self) -> usize {
        match *self {
            ThresholdClause::GreaterThan { coord, .. } => coord,
            ThresholdClause::LessThan { coord, .. } => coord,
        }
    }

    /// Exact Boolean evaluation (no smoothing).
    pub fn satisfied(&self, q: &[f64]) -> bool {
        match *self {
            ThresholdClause::GreaterThan { coord, threshold } => q[coord] > threshold,
            ThresholdClause::LessThan { coord, threshold } => q[coord] < threshold,
        }
    }

    /// Logistic smoothing of the indicator, in [0, 1], differentiable.
    pub fn smoothed(&self, q: &[f64], width: f64) -> f64 {
        let arg = match *self {
            ThresholdClause::GreaterThan { coord, threshold } => (q[coord] - threshold) / width,
            ThresholdClause::LessThan { coord, threshold } => (threshold - q[coord]) / width,
        };
        logistic(arg)
    }

    /// Derivative of [`Self::smoothed`] with respect to the clause coordinate.
    pub fn smoothed_grad(&self, q: &[f64], width: f64) -> f64 {
        let (arg, sign) = match *self {
            ThresholdClause::GreaterThan { coord, threshold } => {
                ((q[coord] - threshold) / width, 1.0)
            }
            ThresholdClause::LessThan { coord, threshold } => {
                ((threshold - q[coord]) / width, -1.0)
            }
        };
        let s = logistic(arg);
        sign * s * (1.0 - s) / width
    }
}

pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Loss landscapes for the classical learning generator.
#[derive(Debug, Clone, PartialEq)]
pub enum LossForm {
    /// `|theta - target|^2 / 2`
    Quadratic { target: Vec<f64> },
}

impl LossForm {
    pub fn evaluate(&self, theta: &[f64]) -> f64 {
        match self {
            LossForm::Quadratic { target } => {
                0.5 * theta
                    .iter()
                    .zip(target)
                    .map(|(t, g)| (t - g) * (t - g))
                    .sum::<f64>()
            }
        }
    }

    pub fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        match self {
            LossForm::Quadratic { target } => {
                theta.iter().zip(target).map(|(t, g)| t - g).collect()
            }
        }
    }
}

/// Piecewise-constant control schedule: `(start, stop, amplitude)` segments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub segments: Vec<(f64, f64, f64)>,
}

impl Schedule {
    pub fn constant_zero() -> Self {
        Self::default()
    }

    pub fn value_at(&self, t: f64) -> f64 {
        self.segments
            .iter()
            .find(|(a, b, _)| t >= *a && t < *b)
            .map(|(_, _, v)| *v)
            .unwrap_or(0.0)
    }
}

/// One named parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Real(f64),
    Int(i64),
    RealVec(Vec<f64>),
    /// `(input features, target)` pairs for induction.
    Dataset(Vec<(Vec<f64>, f64)>),
    Predictor(PredictorForm),
    Clauses(Vec<ThresholdClause>),
    Loss(LossForm),
    Matrix(ComplexMatrix),
    MatrixList(Vec<ComplexMatrix>),
    History(HistoryStateSpec),
    Schedule(Schedule),
}

/// Declarative description of one generator: kind, side, named parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub side: Side,
    pub params: BTreeMap<String, ParamValue>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, side: Side) -> Self {
        Self {
            kind,
            side,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: ParamValue) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    fn get(&self, name: &str) -> Result<&ParamValue> {
        self.params
            .get(name)
            .ok_or_else(|| SimError::MissingParameter(name.to_string()))
    }

    pub fn real(&self, name: &str) -> Result<f64> {
        match self.get(name)? {
            ParamValue::Real(v) => Ok(*v),
            ParamValue::Int(v) => Ok(*v as f64),
            _ => Err(SimError::MissingParameter(format!("{name} (expected real)"))),
        }
    }

    pub fn real_or(&self, name: &str, default: f64) -> Result<f64> {
        match self.params.get(name) {
            None => Ok(default),
            Some(_) => self.real(name),
        }
    }

    pub fn positive_real(&self, name: &str) -> Result<f64> {
        let v = self.real(name)?;
        if v <= 0.0 {
            return Err(SimError::NonpositiveParameter {
                name: name.to_string(),
                value: v,
            });
        }
        Ok(v)
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        match self.get(name)? {
            ParamValue::Int(v) => Ok(*v),
            _ => Err(SimError::MissingParameter(format!("{name} (expected int)"))),
        }
    }

    pub fn real_vec(&self, name: &str) -> Result<Vec<f64>> {
        match self.get(name)? {
            ParamValue::RealVec(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected real vector)"
            ))),
        }
    }

    pub fn dataset(&self, name: &str) -> Result<Vec<(Vec<f64>, f64)>> {
        match self.get(name)? {
            ParamValue::Dataset(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected dataset)"
            ))),
        }
    }

    pub fn predictor(&self, name: &str) -> Result<PredictorForm> {
        match self.get(name)? {
            ParamValue::Predictor(v) => Ok(*v),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected predictor form)"
            ))),
        }
    }

    pub fn clauses(&self, name: &str) -> Result<Vec<ThresholdClause>> {
        match self.get(name)? {
            ParamValue::Clauses(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected clause list)"
            ))),
        }
    }

    pub fn loss(&self, name: &str) -> Result<LossForm> {
        match self.get(name)? {
            ParamValue::Loss(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!("{name} (expected loss)"))),
        }
    }

    pub fn matrix(&self, name: &str) -> Result<ComplexMatrix> {
        match self.get(name)? {
            ParamValue::Matrix(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected matrix)"
            ))),
        }
    }

    pub fn matrix_list(&self, name: &str) -> Result<Vec<ComplexMatrix>> {
        match self.get(name)? {
            ParamValue::MatrixList(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected matrix list)"
            ))),
        }
    }

    pub fn history(&self, name: &str) -> Result<HistoryStateSpec> {
        match self.get(name)? {
            ParamValue::History(v) => Ok(v.clone()),
            _ => Err(SimError::MissingParameter(format!(
                "{name} (expected history-state spec)"
            ))),
        }
    }

    pub fn schedule_or_zero(&self, name: &str) -> Result<Schedule> {
        match self.params.get(name) {
            None => Ok(Schedule::constant_zero()),
            Some(ParamValue::Schedule(s)) => Ok(s.clone()),
            Some(_) => Err(SimError::MissingParameter(format!(
                "{name} (expected schedule)"
            ))),
        }
    }

    pub fn require_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(SimError::SideMismatch {
                expected: format!("{side:?}"),
                actual: format!("{:?}", self.side),
            });
        }
        Ok(())
    }
}
