//! Scenario configuration: strict JSON with defaults.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Which toy setup to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScenarioKind {
    #[serde(rename = "qagi-toy")]
    QagiToy,
    #[serde(rename = "cagi-toy")]
    CagiToy,
}

/// Coupling constants shared by the toy Hamiltonians. Field names follow the
/// symbols of the two toy models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Couplings {
    /// Sensing / copy strength.
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    /// Reasoning penalty weight.
    #[serde(default = "default_mu")]
    pub mu: f64,
    /// Transverse field.
    #[serde(default = "default_g")]
    pub g: f64,
    /// Ising coupling.
    #[serde(default = "default_j")]
    pub j: f64,
    /// Weight-regularizer scale (classical toy).
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Weight mass (classical toy).
    #[serde(default = "default_mass")]
    pub mass: f64,
    /// Actuator pulse schedule: `(start, stop, amplitude)` segments.
    #[serde(default)]
    pub eta: Vec<(f64, f64, f64)>,
}

fn default_kappa() -> f64 {
    0.5
}
fn default_mu() -> f64 {
    1.0
}
fn default_g() -> f64 {
    0.3
}
fn default_j() -> f64 {
    0.7
}
fn default_lambda() -> f64 {
    1.0
}
fn default_mass() -> f64 {
    1.0
}

impl Default for Couplings {
    fn default() -> Self {
        Self {
            kappa: default_kappa(),
            mu: default_mu(),
            g: default_g(),
            j: default_j(),
            lambda: default_lambda(),
            mass: default_mass(),
            eta: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
}

fn default_dt() -> f64 {
    0.01
}
fn default_steps() -> usize {
    1000
}

impl Default for Timing {
    fn default() -> Self {
        Self {
            dt: default_dt(),
            steps: default_steps(),
        }
    }
}

/// How the pointer read-out is realized in the quantum toy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadoutMode {
    /// Coherent sensing coupling, continuous pointer dephasing at rate
    /// `kappa^2`, and a projective pointer measurement every `every` steps.
    Measure,
    /// Sensing replaced by its induced environment dephasing channel
    /// (jump `Z_E` at rate `kappa^2`); no discrete measurements. Gives a
    /// clean exponential off-diagonal decay for rate fits.
    Continuous,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Readout {
    #[serde(default = "default_mode")]
    pub mode: ReadoutMode,
    /// Steps between projective pointer read-outs in `measure` mode.
    #[serde(default = "default_every")]
    pub every: usize,
}

fn default_mode() -> ReadoutMode {
    ReadoutMode::Measure
}
fn default_every() -> usize {
    10
}

impl Default for Readout {
    fn default() -> Self {
        Self {
            mode: default_mode(),
            every: default_every(),
        }
    }
}

/// Full configuration of one scenario run. Unknown JSON keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub couplings: Couplings,
    #[serde(default)]
    pub timing: Timing,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub readout: Readout,
}

impl ScenarioConfig {
    pub fn qagi_defaults() -> Self {
        Self {
            scenario: ScenarioKind::QagiToy,
            couplings: Couplings::default(),
            timing: Timing::default(),
            seed: 0,
            readout: Readout::default(),
        }
    }

    pub fn cagi_defaults() -> Self {
        Self {
            scenario: ScenarioKind::CagiToy,
            ..Self::qagi_defaults()
        }
    }

    /// Parse strict JSON and validate invariants.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = serde_json::from_str(text)
            .map_err(|e| SimError::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.timing.dt > 0.0) || !self.timing.dt.is_finite() {
            return Err(SimError::InvalidConfig(format!(
                "timing.dt must be positive and finite, got {}",
                self.timing.dt
            )));
        }
        if self.timing.steps < 1 {
            return Err(SimError::InvalidConfig("timing.steps must be >= 1".into()));
        }
        let c = &self.couplings;
        for (name, v) in [
            ("kappa", c.kappa),
            ("mu", c.mu),
            ("g", c.g),
            ("j", c.j),
            ("lambda", c.lambda),
            ("mass", c.mass),
        ] {
            if !v.is_finite() {
                return Err(SimError::InvalidConfig(format!(
                    "couplings.{name} must be finite, got {v}"
                )));
            }
        }
        for (a, b, amp) in &c.eta {
            if !a.is_finite() || !b.is_finite() || !amp.is_finite() || b < a {
                return Err(SimError::InvalidConfig(format!(
                    "couplings.eta segment ({a}, {b}, {amp}) is invalid"
                )));
            }
        }
        if c.mass <= 0.0 {
            return Err(SimError::InvalidConfig(format!(
                "couplings.mass must be positive, got {}",
                c.mass
            )));
        }
        if self.readout.every < 1 {
            return Err(SimError::InvalidConfig("readout.every must be >= 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = ScenarioConfig::from_json(r#"{"scenario":"qagi-toy"}"#).unwrap();
        assert_eq!(cfg.couplings.kappa, 0.5);
        assert_eq!(cfg.couplings.mu, 1.0);
        assert_eq!(cfg.couplings.g, 0.3);
        assert_eq!(cfg.couplings.j, 0.7);
        assert_eq!(cfg.timing.dt, 0.01);
        assert_eq!(cfg.timing.steps, 1000);
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.readout.every, 10);
    }

    #[test]
    fn negative_dt_is_rejected() {
        let err =
            ScenarioConfig::from_json(r#"{"scenario":"qagi-toy","timing":{"dt":-1.0}}"#)
                .unwrap_err();
        assert!(matches!(err, SimError::InvalidConfig(_)));
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(ScenarioConfig::from_json(r#"{"scenario":"qagi-toy","typo":1}"#).is_err());
    }

    #[test]
    fn round_trip_is_identical() {
        let cfg = ScenarioConfig::from_json(
            r#"{"scenario":"cagi-toy","couplings":{"kappa":0.25,"eta":[[0.0,1.0,0.5]]},"seed":7}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        let again = ScenarioConfig::from_json(&text).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(text, serde_json::to_string(&again).unwrap());
    }
}
