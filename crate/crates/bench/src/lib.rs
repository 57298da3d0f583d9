//! Shared fixtures for the benchmarks.

use cqed_core::{IntegratorSettings, SystemParams};

pub fn baseline_cases() -> Vec<(&'static str, SystemParams)> {
    vec![
        ("baseline_a", SystemParams::baseline_a()),
        ("fig2", SystemParams::fig2()),
    ]
}

pub fn default_settings() -> IntegratorSettings {
    IntegratorSettings::default()
}
