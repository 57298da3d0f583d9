use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{PulseShape, SqueezeTransform};
use crate::error::{Error, Result};

const PROB_TOL: f64 = 1e-12;

/// Converts a rate quoted as `value / 2pi` in GHz to rad/ns.
pub fn two_pi_ghz(x: f64) -> f64 {
    2.0 * PI * x
}

/// Converts a rate quoted as `value / 2pi` in MHz to rad/ns.
pub fn two_pi_mhz(x: f64) -> f64 {
    2.0 * PI * x * 1e-3
}

/// Physical parameters of one atom-cavity-pulse configuration.
///
/// Angular frequencies are in rad/ns and times in ns. The pulse is centered
/// at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Atom-cavity coupling `g`.
    pub g: f64,
    /// Atomic amplitude decay `Gamma`; the excited population decays at `2 Gamma`.
    pub atom_decay: f64,
    /// Stark-shifted atom-cavity detuning `Omega`.
    pub detuning: f64,
    /// Qubit level splitting `Delta`. It drops out of every observable.
    pub qubit_splitting: f64,
    /// Cavity-waveguide coupling `kappa`.
    pub kappa: f64,
    /// Cavity decay `gamma`.
    pub cavity_decay: f64,
    /// Gaussian pulse width, ns.
    pub sigma: f64,
    /// Input coherent amplitude.
    pub alpha: Complex64,
    pub squeeze: SqueezeTransform,
    pub rho00_0: f64,
    pub rho11_0: f64,
    pub rho10_0: Complex64,
}

impl SystemParams {
    /// Coherent pulse with `alpha = 10` and `Gamma / 2pi = 1 MHz`, remaining
    /// parameters as in [`SystemParams::fig2`].
    pub fn baseline_a() -> Self {
        Self {
            alpha: Complex64::new(10.0, 0.0),
            squeeze: SqueezeTransform::identity(),
            ..Self::fig2()
        }
    }

    /// Squeezed pulse `alpha = 100`, `r = 1`, `g / 2pi = 0.17 GHz`,
    /// `Gamma / 2pi = 1 MHz`, `kappa = gamma = 2pi 0.2 GHz`, `sigma = 3 ns`,
    /// `Omega / 2pi = 100 GHz`, qubit in `(|0> + |1>) / sqrt 2`.
    pub fn fig2() -> Self {
        Self {
            g: two_pi_ghz(0.17),
            atom_decay: two_pi_mhz(1.0),
            detuning: two_pi_ghz(100.0),
            qubit_splitting: 0.0,
            kappa: two_pi_ghz(0.2),
            cavity_decay: two_pi_ghz(0.2),
            sigma: 3.0,
            alpha: Complex64::new(100.0, 0.0),
            squeeze: SqueezeTransform::new(1.0, FRAC_PI_2).expect("valid squeeze"),
            rho00_0: 0.5,
            rho11_0: 0.5,
            rho10_0: Complex64::new(0.5, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let non_negative = [
            ("g", self.g),
            ("Gamma", self.atom_decay),
            ("kappa", self.kappa),
            ("gamma", self.cavity_decay),
        ];
        for (field, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(field, format!("{v} must be finite and >= 0")));
            }
        }
        if !(self.cavity_decay > 0.0) {
            return Err(Error::invalid("gamma", "cavity decay must be positive"));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::invalid("sigma", "pulse width must be positive"));
        }
        for (field, v) in [("Omega", self.detuning), ("Delta", self.qubit_splitting)] {
            if !v.is_finite() {
                return Err(Error::invalid(field, "must be finite"));
            }
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(Error::invalid("alpha", "must be finite"));
        }
        for (field, v) in [("rho00_0", self.rho00_0), ("rho11_0", self.rho11_0)] {
            if !(-PROB_TOL..=1.0 + PROB_TOL).contains(&v) {
                return Err(Error::invalid(field, format!("population {v} outside [0, 1]")));
            }
        }
        if (self.rho00_0 + self.rho11_0 - 1.0).abs() > PROB_TOL {
            return Err(Error::invalid(
                "rho11_0",
                format!("populations sum to {}", self.rho00_0 + self.rho11_0),
            ));
        }
        if self.rho10_0.norm_sqr() > self.rho00_0 * self.rho11_0 + PROB_TOL {
            return Err(Error::invalid(
                "rho10_0",
                format!(
                    "|rho10|^2 = {} exceeds rho00 rho11 = {}",
                    self.rho10_0.norm_sqr(),
                    self.rho00_0 * self.rho11_0
                ),
            ));
        }
        Ok(())
    }

    pub fn pulse(&self) -> PulseShape {
        PulseShape {
            sigma: self.sigma,
            center: 0.0,
            kappa: self.kappa,
            gamma: self.cavity_decay,
        }
    }

    /// Two-photon coherent amplitude of the input pulse.
    pub fn beta(&self) -> Complex64 {
        self.squeeze.alpha_to_beta(self.alpha)
    }

    /// The same system with atomic decay switched off.
    pub fn without_decay(&self) -> Self {
        Self {
            atom_decay: 0.0,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        SystemParams::fig2().validate().unwrap();
        SystemParams::baseline_a().validate().unwrap();
        assert_eq!(SystemParams::baseline_a().squeeze.r(), 0.0);
    }

    #[test]
    fn unit_conversion() {
        assert!((two_pi_ghz(1.0) - 2.0 * PI).abs() < 1e-15);
        assert!((two_pi_mhz(1000.0) - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_unphysical_state() {
        let mut p = SystemParams::fig2();
        p.rho11_0 = 0.7;
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { field: "rho11_0", .. })
        ));

        let mut p = SystemParams::fig2();
        p.rho10_0 = Complex64::new(0.6, 0.0);
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { field: "rho10_0", .. })
        ));

        let mut p = SystemParams::fig2();
        p.sigma = 0.0;
        assert!(p.validate().is_err());

        let mut p = SystemParams::fig2();
        p.g = -1.0;
        assert!(p.validate().is_err());
    }
}
