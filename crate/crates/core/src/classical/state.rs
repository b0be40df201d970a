//! Phase-space states `(q, p)` with per-coordinate role labels.

use crate::error::{Result, SimError};

/// Paired coordinate/momentum vectors; the classical agent state.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSpaceState {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub labels: Vec<String>,
}

impl PhaseSpaceState {
    pub fn new(q: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        let labels = vec![String::new(); q.len()];
        Self::with_labels(q, p, labels)
    }

    pub fn with_labels(q: Vec<f64>, p: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if q.is_empty() || q.len() != p.len() || labels.len() != q.len() {
            return Err(SimError::DimensionMismatch(format!(
                "phase-space state needs equal nonempty q/p/labels, got {}/{}/{}",
                q.len(),
                p.len(),
                labels.len()
            )));
        }
        for v in q.iter().chain(p.iter()) {
            if !v.is_finite() {
                return Err(SimError::NonFinite("phase-space coordinate".into()));
            }
        }
        Ok(Self { q, p, labels })
    }

    pub fn dof(&self) -> usize {
        self.q.len()
    }
}
