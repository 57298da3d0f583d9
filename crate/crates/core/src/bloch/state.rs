use num_complex::Complex64;

use crate::model::SystemParams;

pub const STATE_DIM: usize = 9;

/// Semiclassical state of the atom-pulse system.
///
/// `sigma_e0` and `sigma_10` are the optical and qubit coherences rotated by
/// the pulse-overlap factor and the qubit splitting; in that frame neither
/// `Delta` nor the overlap derivative appears in their equations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochState {
    pub rho_ee: f64,
    pub rho_e1: Complex64,
    /// Cavity field amplitude `alpha~(t)`.
    pub alpha_t: Complex64,
    pub sigma_e0: Complex64,
    pub sigma_10: Complex64,
}

impl BlochState {
    pub fn to_array(&self) -> [f64; STATE_DIM] {
        [
            self.rho_ee,
            self.rho_e1.re,
            self.rho_e1.im,
            self.alpha_t.re,
            self.alpha_t.im,
            self.sigma_e0.re,
            self.sigma_e0.im,
            self.sigma_10.re,
            self.sigma_10.im,
        ]
    }

    pub fn from_array(y: &[f64; STATE_DIM]) -> Self {
        Self {
            rho_ee: y[0],
            rho_e1: Complex64::new(y[1], y[2]),
            alpha_t: Complex64::new(y[3], y[4]),
            sigma_e0: Complex64::new(y[5], y[6]),
            sigma_10: Complex64::new(y[7], y[8]),
        }
    }
}

/// State at the start of the interaction window: atom in the ground
/// manifold, field at its input amplitude. `sigma_10` starts at the qubit
/// coherence because the overlap `<beta|beta~>` is 1 before the pulse acts.
pub fn initial_state(p: &SystemParams) -> BlochState {
    BlochState {
        rho_ee: 0.0,
        rho_e1: Complex64::new(0.0, 0.0),
        alpha_t: p.alpha,
        sigma_e0: Complex64::new(0.0, 0.0),
        sigma_10: p.rho10_0,
    }
}
