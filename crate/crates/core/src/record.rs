//! Trajectory records: time series of metrics plus measurement events.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// One projective read-out logged during a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementEvent {
    pub step: usize,
    pub time: f64,
    pub outcome: usize,
    pub probability: f64,
    /// `<H>` immediately before the read-out.
    pub pre_energy: f64,
    /// `<H>` immediately after the read-out.
    pub post_energy: f64,
}

/// Time series of states and derived metrics from one run.
///
/// All series share the length of `times`; insertion order of the series map
/// fixes the CSV column order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrajectoryRecord {
    pub times: Vec<f64>,
    pub series: IndexMap<String, Vec<f64>>,
    pub events: Vec<MeasurementEvent>,
    pub meta: Option<serde_json::Value>,
}

impl TrajectoryRecord {
    pub fn new() -> Self {
        Self::default()
    }

    /// Register a series name ahead of time so column order is stable.
    pub fn declare_series(&mut self, name: &str) {
        self.series.entry(name.to_string()).or_default();
    }

    pub fn push_sample(&mut self, t: f64, values: &[(&str, f64)]) {
        self.times.push(t);
        for (name, v) in values {
            self.series
                .entry((*name).to_string())
                .or_default()
                .push(*v);
        }
    }

    pub fn series_named(&self, name: &str) -> Result<&[f64]> {
        self.series
            .get(name)
            .map(|v| v.as_slice())
            .ok_or_else(|| SimError::UnknownMetric(name.to_string()))
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn check_lengths(&self) -> Result<()> {
        for (name, s) in &self.series {
            if s.len() != self.times.len() {
                return Err(SimError::InvalidConfig(format!(
                    "series `{name}` has {} samples, times has {}",
                    s.len(),
                    self.times.len()
                )));
            }
        }
        Ok(())
    }

    /// Serialize to CSV: `t,<series...>,event_flag`, 17 significant digits,
    /// `.` decimal, no locale dependence.
    pub fn to_csv(&self) -> Result<String> {
        self.check_lengths()?;
        let mut out = String::new();
        out.push('t');
        for name in self.series.keys() {
            out.push(',');
            out.push_str(name);
        }
        out.push_str(",event_flag\n");
        let mut event_steps: Vec<usize> = self.events.iter().map(|e| e.step).collect();
        event_steps.sort_unstable();
        for (i, t) in self.times.iter().enumerate() {
            out.push_str(&format_float(*t));
            for s in self.series.values() {
                out.push(',');
                out.push_str(&format_float(s[i]));
            }
            let flag = if event_steps.binary_search(&i).is_ok() { 1 } else { 0 };
            out.push_str(&format!(",{flag}\n"));
        }
        Ok(out)
    }
}

/// Fixed 17-significant-digit scientific notation for reproducible output.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_stable_columns_and_flags() {
        let mut rec = TrajectoryRecord::new();
        rec.declare_series("energy_total");
        rec.declare_series("offdiag_env_abs");
        rec.push_sample(0.0, &[("energy_total", 1.0), ("offdiag_env_abs", 0.5)]);
        rec.push_sample(0.1, &[("energy_total", 1.0), ("offdiag_env_abs", 0.4)]);
        rec.events.push(MeasurementEvent {
            step: 1,
            time: 0.1,
            outcome: 0,
            probability: 1.0,
            pre_energy: 1.0,
            post_energy: 1.0,
        });
        let csv = rec.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "t,energy_total,offdiag_env_abs,event_flag");
        assert!(lines.next().unwrap().ends_with(",0"));
        assert!(lines.next().unwrap().ends_with(",1"));
    }

    #[test]
    fn mismatched_series_length_is_an_error() {
        let mut rec = TrajectoryRecord::new();
        rec.declare_series("a");
        rec.times.push(0.0);
        assert!(rec.to_csv().is_err());
    }
}
