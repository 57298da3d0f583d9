//! Squeezed-state algebra: Bogoliubov coefficients and the map between the
//! displaced-squeezed amplitude `alpha` and the two-photon coherent amplitude
//! `beta`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Squeeze parameters `(r, phi)` together with the derived Bogoliubov
/// coefficients `mu = cosh r` and `nu = exp(2i phi) sinh r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeTransform {
    r: f64,
    phi: f64,
    mu: f64,
    nu: Complex64,
}

impl SqueezeTransform {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::invalid("r", "squeeze factor must be finite"));
        }
        if r < 0.0 {
            return Err(Error::invalid("r", format!("squeeze factor {r} is negative")));
        }
        if !phi.is_finite() {
            return Err(Error::invalid("phi", "squeeze phase must be finite"));
        }
        Ok(Self {
            r,
            phi,
            mu: r.cosh(),
            nu: Complex64::from_polar(r.sinh(), 2.0 * phi),
        })
    }

    /// Unsqueezed (coherent) light.
    pub fn identity() -> Self {
        Self {
            r: 0.0,
            phi: std::f64::consts::FRAC_PI_2,
            mu: 1.0,
            nu: Complex64::new(0.0, 0.0),
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    /// `1 + mu^2 + |nu|^2`, the enhancement factor multiplying the field
    /// response of a squeezed pulse.
    pub fn enhancement(&self) -> f64 {
        1.0 + self.mu * self.mu + self.nu.norm_sqr()
    }

    /// `beta = mu alpha + nu alpha*`.
    pub fn alpha_to_beta(&self, alpha: Complex64) -> Complex64 {
        self.mu * alpha + self.nu * alpha.conj()
    }

    /// `alpha = mu beta - nu beta*`, the exact inverse of [`alpha_to_beta`].
    ///
    /// [`alpha_to_beta`]: Self::alpha_to_beta
    pub fn beta_to_alpha(&self, beta: Complex64) -> Complex64 {
        self.mu * beta - self.nu * beta.conj()
    }
}

pub fn make_squeeze(r: f64, phi: f64) -> Result<SqueezeTransform> {
    SqueezeTransform::new(r, phi)
}

pub fn alpha_to_beta(alpha: Complex64, sq: &SqueezeTransform) -> Complex64 {
    sq.alpha_to_beta(alpha)
}

pub fn beta_to_alpha(beta: Complex64, sq: &SqueezeTransform) -> Complex64 {
    sq.beta_to_alpha(beta)
}

/// Photon-number variance of the squeezed state `|alpha, eps>` after the
/// amplitude has picked up a phase `theta`.
pub fn photon_number_variance(alpha: Complex64, sq: &SqueezeTransform, theta: f64) -> f64 {
    let r = sq.r();
    let (sh, ch) = (r.sinh(), r.cosh());
    let x = theta - 0.5 * sq.phi();
    2.0 * sh * sh * ch * ch
        + alpha.norm_sqr() * ((-2.0 * r).exp() * x.cos().powi(2) + (2.0 * r).exp() * x.sin().powi(2))
}
