//! Closed-form far-detuned approximations.
//!
//! Treating the drive `g S(t) alpha~(t)` as constant, the atomic coherences
//! follow their zero-frequency Laplace pole adiabatically. That gives the
//! steady excited population and optical coherence, a linear-in-energy
//! field phase, and an exponential damping of the qubit coherence. The
//! constant drive amplitude uses the intensity-weighted mean of `|S|^2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::SystemParams;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Quadrature panels for the damping integral.
const PANELS: usize = 4000;
const WINDOW_SIGMAS: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub rho_ee_peak: f64,
    pub theta_approx: f64,
    pub loss_approx: f64,
    /// `|Sigma10(inf) / Sigma10(0)|`.
    pub sigma10_damping: f64,
}

/// `Gamma^2 + Omega^2 + 2 g^2 |S_bar alpha|^2`.
fn saturation_denominator(p: &SystemParams) -> Result<f64> {
    let sbar_sq = p.pulse().mean_intensity();
    let d = p.atom_decay.powi(2)
        + p.detuning.powi(2)
        + 2.0 * p.g * p.g * sbar_sq * p.alpha.norm_sqr();
    if d > 0.0 {
        Ok(d)
    } else {
        Err(Error::invalid(
            "Omega",
            "far-detuned approximation needs Gamma, Omega or drive to be non-zero",
        ))
    }
}

/// Adiabatic excited-state population for a drive amplitude `s`.
pub fn steady_rho_ee(p: &SystemParams, s: f64) -> Result<f64> {
    let d = saturation_denominator(p)?;
    Ok(p.rho11_0 * p.g * p.g * s * s * p.alpha.norm_sqr() / d)
}

/// Adiabatic optical coherence for a drive amplitude `s`.
pub fn steady_rho_e1(p: &SystemParams, s: f64) -> Result<Complex64> {
    let d = saturation_denominator(p)?;
    Ok(p.rho11_0 * p.g * s * p.alpha * Complex64::new(p.detuning, -p.atom_decay) / d)
}

/// Real coefficient `X` such that the linearized field is
/// `alpha~(t) = alpha [1 - i X (Omega - i Gamma) E(t) / E]` with `E(t)` the
/// cumulative pulse energy.
fn field_coefficient(p: &SystemParams) -> Result<f64> {
    let d = saturation_denominator(p)?;
    Ok(p.g * p.g * p.pulse().energy() * p.squeeze.enhancement() / (2.0 * d))
}

/// Linearized field amplitude after the pulse energy up to `t` has passed.
pub fn approx_field(p: &SystemParams, t: f64) -> Result<Complex64> {
    let x = field_coefficient(p)?;
    let pulse = p.pulse();
    let frac = pulse.cumulative_energy(t) / pulse.energy();
    Ok(p.alpha * (1.0 - I * x * frac * Complex64::new(p.detuning, -p.atom_decay)))
}

/// Far-detuned estimate of the final field phase shift.
pub fn approx_phase(p: &SystemParams) -> Result<f64> {
    let x = field_coefficient(p)?;
    Ok(Complex64::new(1.0 - x * p.atom_decay, -x * p.detuning).arg())
}

/// Returns the `Sigma_e0 / Sigma_10` ratio at the pulse peak and the complex
/// damping `Sigma_10(inf) / Sigma_10(0)`.
pub fn approx_sigma_channel(p: &SystemParams) -> Result<(Complex64, Complex64)> {
    if p.atom_decay == 0.0 && p.detuning == 0.0 {
        return Err(Error::invalid(
            "Omega",
            "Sigma-channel approximation needs Gamma or Omega non-zero",
        ));
    }
    let pole = Complex64::new(-p.atom_decay, p.detuning);
    let pulse = p.pulse();
    let scale = I * p.g * approx_field(p, pulse.center)? * pulse.peak() / pole;

    if p.g == 0.0 {
        return Ok((scale, Complex64::new(1.0, 0.0)));
    }

    // Composite Simpson over the window of |alpha~(t)|^2 |S(t)|^2.
    let half = WINDOW_SIGMAS * p.sigma;
    let h = 2.0 * half / PANELS as f64;
    let mut sum = 0.0;
    for i in 0..=PANELS {
        let t = pulse.center - half + i as f64 * h;
        let w = if i == 0 || i == PANELS {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        sum += w * approx_field(p, t)?.norm_sqr() * pulse.amplitude(t).powi(2);
    }
    let weighted = sum * h / 3.0;
    let damping = (-(p.g * p.g * weighted) / Complex64::new(p.atom_decay, -p.detuning)).exp();
    Ok((scale, damping))
}

pub fn approx_report(p: &SystemParams) -> Result<ApproxReport> {
    p.validate()?;
    let (_, damping) = approx_sigma_channel(p)?;
    Ok(ApproxReport {
        rho_ee_peak: steady_rho_ee(p, p.pulse().peak())?,
        theta_approx: approx_phase(p)?,
        loss_approx: field_coefficient(p)? * p.atom_decay,
        sigma10_damping: damping.norm(),
    })
}
