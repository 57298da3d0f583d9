//! JSON run configuration. Rates are given as `value / 2pi` in GHz or MHz.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::phase_match::PhaseMatchSpec;
use crate::bloch::IntegratorSettings;
use crate::error::{Error, Result};
use crate::model::{two_pi_ghz, two_pi_mhz, SqueezeTransform, SystemParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct RunConfig {
    pub alpha: f64,
    pub r: f64,
    #[serde(default = "default_phi")]
    pub phi: f64,
    pub g_over_2pi_GHz: f64,
    pub Gamma_over_2pi_MHz: f64,
    pub kappa_over_2pi_GHz: f64,
    pub gamma_over_2pi_GHz: f64,
    pub sigma_ns: f64,
    pub Omega_over_2pi_GHz: f64,
    #[serde(default)]
    pub Delta_over_2pi_GHz: f64,
    #[serde(default = "half")]
    pub rho11_0: f64,
    #[serde(default = "half")]
    pub rho10_0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rtol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window_sigmas: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,

    // Phase-matching options; defaults reproduce the squeezed/coherent
    // comparison over a log-spaced phase grid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_targets: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_bracket_over_2pi_GHz: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
}

fn default_phi() -> f64 {
    FRAC_PI_2
}

fn half() -> f64 {
    0.5
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn params(&self) -> Result<SystemParams> {
        let p = SystemParams {
            g: two_pi_ghz(self.g_over_2pi_GHz),
            atom_decay: two_pi_mhz(self.Gamma_over_2pi_MHz),
            detuning: two_pi_ghz(self.Omega_over_2pi_GHz),
            qubit_splitting: two_pi_ghz(self.Delta_over_2pi_GHz),
            kappa: two_pi_ghz(self.kappa_over_2pi_GHz),
            cavity_decay: two_pi_ghz(self.gamma_over_2pi_GHz),
            sigma: self.sigma_ns,
            alpha: Complex64::new(self.alpha, 0.0),
            squeeze: SqueezeTransform::new(self.r, self.phi)?,
            rho00_0: 1.0 - self.rho11_0,
            rho11_0: self.rho11_0,
            rho10_0: Complex64::new(self.rho10_0, 0.0),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn settings(&self) -> Result<IntegratorSettings> {
        let d = IntegratorSettings::default();
        let s = IntegratorSettings {
            rtol: self.rtol.unwrap_or(d.rtol),
            atol: self.atol.unwrap_or(d.atol),
            window_sigmas: self.window_sigmas.unwrap_or(d.window_sigmas),
            samples: self.samples.unwrap_or(d.samples),
            max_steps: d.max_steps,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn phase_match_spec(&self) -> Result<PhaseMatchSpec> {
        let defaults = PhaseMatchSpec::defaults(self.params()?, self.settings()?);
        let spec = PhaseMatchSpec {
            theta_targets: self.theta_targets.clone().unwrap_or(defaults.theta_targets),
            r_values: self.r_values.clone().unwrap_or(defaults.r_values),
            g_bracket: self
                .g_bracket_over_2pi_GHz
                .map(|[lo, hi]| (two_pi_ghz(lo), two_pi_ghz(hi)))
                .unwrap_or(defaults.g_bracket),
            rel_tol: self.rel_tol.unwrap_or(defaults.rel_tol),
            ..defaults
        };
        spec.validate()?;
        Ok(spec)
    }
}
