//! End-to-end toy scenarios: configuration, register/phase-space builders,
//! channel classification, run loops, and derived reports.

pub mod cagi;
pub mod channel;
pub mod config;
pub mod qagi;
pub mod report;
pub mod run;

pub use cagi::{build_cagi_toy, CagiToy};
pub use channel::{
    apply_kraus, classify_channel, dephasing_kraus, ChannelClass, ChannelDescriptor,
    ChannelRealization, RegisterKind,
};
pub use config::{Couplings, Readout, ReadoutMode, ScenarioConfig, ScenarioKind, Timing};
pub use qagi::{build_qagi_toy, QagiToy};
pub use report::{
    commutation_report_classical, commutation_report_quantum, fit_decoherence_rate,
    CommutationReport,
};
pub use run::{
    mean_final_env_offdiag, run_scenario, sweep_decoherence, with_coupling, ScenarioOutput,
    SweepRow,
};
