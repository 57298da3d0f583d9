//! Gaussian input pulse and its cavity-filtered drive amplitude.

use std::f64::consts::PI;

use statrs::function::erf::erf;

use crate::error::{Error, Result};

/// Gaussian pulse fed through a one-sided cavity.
///
/// `S_in(t) = sqrt(sqrt(2) / (sqrt(pi) sigma)) exp(-(t - t_c)^2 / sigma^2)` is
/// normalized so that `int |S_in|^2 dt = 1`, and the intracavity drive is
/// `S(t) = 2 sqrt(kappa) S_in(t) / gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseShape {
    pub sigma: f64,
    pub center: f64,
    pub kappa: f64,
    pub gamma: f64,
}

impl PulseShape {
    pub fn new(sigma: f64, center: f64, kappa: f64, gamma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::invalid("sigma", "pulse width must be positive"));
        }
        if !center.is_finite() {
            return Err(Error::invalid("center", "pulse center must be finite"));
        }
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::invalid("kappa", "must be finite and >= 0"));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::invalid("gamma", "cavity decay must be positive"));
        }
        Ok(Self {
            sigma,
            center,
            kappa,
            gamma,
        })
    }

    pub fn input(&self, t: f64) -> f64 {
        let x = (t - self.center) / self.sigma;
        (2.0f64.sqrt() / (PI.sqrt() * self.sigma)).sqrt() * (-x * x).exp()
    }

    /// Intracavity drive amplitude `S(t)`.
    pub fn amplitude(&self, t: f64) -> f64 {
        2.0 * self.kappa.sqrt() * self.input(t) / self.gamma
    }

    pub fn peak(&self) -> f64 {
        self.amplitude(self.center)
    }

    /// Closed form of `int |S|^2 dt` over the whole line, `4 kappa / gamma^2`.
    pub fn energy(&self) -> f64 {
        4.0 * self.kappa / (self.gamma * self.gamma)
    }

    /// Intensity-weighted mean of `|S|^2`, i.e. `int |S|^4 / int |S|^2`.
    /// For a Gaussian this is `S_peak^2 / sqrt(2)`.
    pub fn mean_intensity(&self) -> f64 {
        let p = self.peak();
        p * p / 2.0f64.sqrt()
    }

    /// Cumulative `int_{-inf}^{t} |S|^2 dt'` in closed form.
    pub fn cumulative_energy(&self, t: f64) -> f64 {
        let x = 2.0f64.sqrt() * (t - self.center) / self.sigma;
        0.5 * self.energy() * (1.0 + erf(x))
    }
}

pub fn pulse_s(t: f64, p: &PulseShape) -> f64 {
    p.amplitude(t)
}
