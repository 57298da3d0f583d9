//! Cavity-modified atomic decay and ac-Stark-shifted detuning helpers.
//!
//! Simulations take the decay rate and detuning directly; these helpers
//! derive them from lifetimes and the cavity geometry when needed.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayModel {
    /// Radiative lifetime, ns.
    pub tau_r: f64,
    /// Non-radiative lifetime, ns. `None` means no non-radiative channel.
    pub tau_nr: Option<f64>,
    /// Pulse (and cavity) center frequency offset from the atom, rad/ns.
    pub omega_p: f64,
}

impl DecayModel {
    pub fn new(tau_r: f64, tau_nr: Option<f64>, omega_p: f64) -> Result<Self> {
        if !(tau_r.is_finite() && tau_r > 0.0) {
            return Err(Error::invalid("tau_r", "lifetime must be positive"));
        }
        if let Some(t) = tau_nr {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::invalid("tau_nr", "lifetime must be positive"));
            }
        }
        Ok(Self {
            tau_r,
            tau_nr,
            omega_p,
        })
    }
}

/// `P(omega) = tau_r gamma g^2 / (omega^2 + gamma^2 / 4)`.
pub fn purcell_factor(omega: f64, dm: &DecayModel, g: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) {
        return Err(Error::invalid("gamma", "cavity decay must be positive"));
    }
    Ok(dm.tau_r * gamma * g * g / (omega * omega + 0.25 * gamma * gamma))
}

/// Total population decay rate `2 Gamma = (1 + P) / tau_r + 1 / tau_nr`.
pub fn total_decay(dm: &DecayModel, purcell: f64) -> Result<f64> {
    if !(dm.tau_r > 0.0) {
        return Err(Error::invalid("tau_r", "lifetime must be positive"));
    }
    let nr = match dm.tau_nr {
        Some(t) if t > 0.0 => 1.0 / t,
        Some(_) => return Err(Error::invalid("tau_nr", "lifetime must be positive")),
        None => 0.0,
    };
    Ok((1.0 + purcell) / dm.tau_r + nr)
}

/// `Omega = omega_p [1 + P / (gamma tau_r)]`.
pub fn stark_detuning(omega_p: f64, purcell: f64, gamma: f64, tau_r: f64) -> Result<f64> {
    if gamma == 0.0 {
        return Err(Error::invalid("gamma", "cavity decay must be non-zero"));
    }
    if tau_r == 0.0 {
        return Err(Error::invalid("tau_r", "lifetime must be non-zero"));
    }
    Ok(omega_p * (1.0 + purcell / (gamma * tau_r)))
}
