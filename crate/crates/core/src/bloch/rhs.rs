use num_complex::Complex64;

use super::BlochState;
use crate::error::{Error, Result};
use crate::model::{PulseShape, SystemParams};

/// Largest `rho_ee / rho11(0)` accepted before the field equation's
/// denominator is treated as singular.
pub const DISPERSIVE_GUARD: f64 = 0.1;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Right-hand side of the optical Bloch system, with the pulse shape and
/// parameter-derived constants precomputed.
#[derive(Debug, Clone, Copy)]
pub struct BlochRhs {
    g: f64,
    decay: f64,
    pole: Complex64,
    rho11_0: f64,
    enhancement: f64,
    pulse: PulseShape,
}

impl BlochRhs {
    pub fn new(p: &SystemParams) -> Self {
        Self {
            g: p.g,
            decay: p.atom_decay,
            pole: Complex64::new(-p.atom_decay, p.detuning),
            rho11_0: p.rho11_0,
            enhancement: p.squeeze.enhancement(),
            pulse: p.pulse(),
        }
    }

    pub fn pulse(&self) -> &PulseShape {
        &self.pulse
    }

    pub fn eval(&self, t: f64, s: &BlochState) -> Result<BlochState> {
        let drive = self.pulse.amplitude(t);
        self.eval_with_drive(t, drive, s)
    }

    /// Derivative with an explicit (real) drive amplitude `S`.
    pub fn eval_with_drive(&self, t: f64, drive: f64, s: &BlochState) -> Result<BlochState> {
        let gs = self.g * drive;
        let field = s.alpha_t;

        // i g [S* a* rho_e1 - S a rho_1e] is real: -2 g S Im(a* rho_e1).
        let drho_ee = -2.0 * gs * (field.conj() * s.rho_e1).im - 2.0 * self.decay * s.rho_ee;
        let drho_e1 = I * gs * field * (2.0 * s.rho_ee - self.rho11_0) + self.pole * s.rho_e1;

        let dalpha = if self.rho11_0 > 0.0 {
            let ratio = s.rho_ee / self.rho11_0;
            if ratio > DISPERSIVE_GUARD {
                return Err(Error::DispersiveRegimeViolation {
                    t,
                    ratio,
                    limit: DISPERSIVE_GUARD,
                });
            }
            -I * gs * s.rho_e1 * self.enhancement / (2.0 * (self.rho11_0 - s.rho_ee))
        } else {
            // No population in |1>: the optical transition is never driven.
            Complex64::new(0.0, 0.0)
        };

        let dsigma_e0 = -I * gs * field * s.sigma_10 + self.pole * s.sigma_e0;
        let dsigma_10 = -I * gs * field.conj() * s.sigma_e0;

        Ok(BlochState {
            rho_ee: drho_ee,
            rho_e1: drho_e1,
            alpha_t: dalpha,
            sigma_e0: dsigma_e0,
            sigma_10: dsigma_10,
        })
    }
}

pub fn rhs(t: f64, s: &BlochState, p: &SystemParams) -> Result<BlochState> {
    BlochRhs::new(p).eval(t, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::initial_state;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn arbitrary_state() -> BlochState {
        BlochState {
            rho_ee: 0.003,
            rho_e1: c(0.01, -0.02),
            alpha_t: c(99.0, -1.3),
            sigma_e0: c(-0.004, 0.002),
            sigma_10: c(0.45, 0.1),
        }
    }

    fn assert_decoupled(p: &SystemParams, d: &BlochState, s: &BlochState) {
        let pole = c(-p.atom_decay, p.detuning);
        assert!((d.rho_ee + 2.0 * p.atom_decay * s.rho_ee).abs() < 1e-15);
        assert!((d.rho_e1 - pole * s.rho_e1).norm() < 1e-15);
        assert!((d.sigma_e0 - pole * s.sigma_e0).norm() < 1e-15);
        assert_eq!(d.alpha_t, c(0.0, 0.0));
        assert_eq!(d.sigma_10, c(0.0, 0.0));
    }

    #[test]
    fn zero_coupling_decouples() {
        let p = SystemParams {
            g: 0.0,
            ..SystemParams::fig2()
        };
        let s = arbitrary_state();
        let d = rhs(0.0, &s, &p).unwrap();
        assert_decoupled(&p, &d, &s);
    }

    #[test]
    fn zero_drive_decouples() {
        let p = SystemParams::fig2();
        let s = arbitrary_state();
        let d = BlochRhs::new(&p).eval_with_drive(0.0, 0.0, &s).unwrap();
        assert_decoupled(&p, &d, &s);
    }

    #[test]
    fn initial_derivative_at_peak() {
        let p = SystemParams::fig2();
        let s0 = initial_state(&p);
        let d = rhs(0.0, &s0, &p).unwrap();
        let peak = p.pulse().peak();
        assert_eq!(d.alpha_t, c(0.0, 0.0));
        assert_eq!(d.rho_ee, 0.0);
        let expect = -I * p.g * peak * p.alpha * p.rho11_0;
        assert!((d.rho_e1 - expect).norm() < 1e-12 * expect.norm());
    }

    #[test]
    fn guard_trips_outside_dispersive_regime() {
        let p = SystemParams::fig2();
        let s = BlochState {
            rho_ee: 0.2 * p.rho11_0,
            ..initial_state(&p)
        };
        assert!(matches!(
            rhs(0.0, &s, &p),
            Err(Error::DispersiveRegimeViolation { .. })
        ));
    }

    #[test]
    fn empty_upper_level_freezes_field() {
        let p = SystemParams {
            rho00_0: 1.0,
            rho11_0: 0.0,
            rho10_0: c(0.0, 0.0),
            ..SystemParams::fig2()
        };
        let d = rhs(0.0, &initial_state(&p), &p).unwrap();
        assert_eq!(d.alpha_t, c(0.0, 0.0));
        assert_eq!(d.rho_e1, c(0.0, 0.0));
    }
}
