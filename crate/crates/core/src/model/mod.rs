//! Physical parameters, squeezed-state algebra, pulse shapes and the
//! cavity-modified rate helpers.

mod decay;
mod params;
mod pulse;
mod squeeze;

pub use decay::{purcell_factor, stark_detuning, total_decay, DecayModel};
pub use params::{two_pi_ghz, two_pi_mhz, SystemParams};
pub use pulse::{pulse_s, PulseShape};
pub use squeeze::{
    alpha_to_beta, beta_to_alpha, make_squeeze, photon_number_variance, SqueezeTransform,
};
