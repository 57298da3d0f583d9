//! Dynamical state, right-hand side and adaptive integration of the
//! semiclassical optical Bloch system.

mod dopri;
mod rhs;
mod state;

pub use dopri::{StepStats, Tolerances};
pub use rhs::{rhs, BlochRhs, DISPERSIVE_GUARD};
pub use state::{initial_state, BlochState, STATE_DIM};

use crate::error::{Error, Result};
use crate::model::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings {
    pub rtol: f64,
    pub atol: f64,
    /// Half-width of the integration window in units of the pulse width.
    pub window_sigmas: f64,
    /// Number of uniformly spaced output samples, endpoints included.
    pub samples: usize,
    pub max_steps: usize,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-14,
            window_sigmas: 6.0,
            samples: 2001,
            max_steps: 200_000_000,
        }
    }
}

impl IntegratorSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rtol.is_finite() && self.rtol > 0.0) {
            return Err(Error::invalid("rtol", "must be positive"));
        }
        if !(self.atol.is_finite() && self.atol > 0.0) {
            return Err(Error::invalid("atol", "must be positive"));
        }
        if !(self.window_sigmas.is_finite() && self.window_sigmas > 0.0) {
            return Err(Error::invalid("window_sigmas", "must be positive"));
        }
        if self.samples < 2 {
            return Err(Error::invalid("samples", "need at least 2 output samples"));
        }
        Ok(())
    }

    /// Both tolerances scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rtol: self.rtol * factor,
            atol: self.atol * factor,
            ..*self
        }
    }
}

/// One integration of the Bloch system sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<BlochState>,
    /// Drive amplitude `S(t)` at each sample.
    pub pulse: Vec<f64>,
    pub params: SystemParams,
    pub stats: StepStats,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// State at the end of the window, which stands in for `t -> infinity`.
    pub fn final_state(&self) -> &BlochState {
        self.states.last().expect("trajectory has at least two samples")
    }

    pub fn initial(&self) -> &BlochState {
        &self.states[0]
    }

    pub fn max_rho_ee(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.rho_ee)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn sample_times(p: &SystemParams, set: &IntegratorSettings) -> Vec<f64> {
    let half = set.window_sigmas * p.sigma;
    let n = set.samples;
    let step = 2.0 * half / (n - 1) as f64;
    let mut times: Vec<f64> = (0..n).map(|i| -half + i as f64 * step).collect();
    times[n - 1] = half;
    times
}

pub fn integrate(p: &SystemParams, set: &IntegratorSettings) -> Result<Trajectory> {
    p.validate()?;
    set.validate()?;

    let rhs = BlochRhs::new(p);
    let times = sample_times(p, set);
    let mut states = vec![BlochState::default(); times.len()];
    let tol = Tolerances {
        rtol: set.rtol,
        atol: set.atol,
        max_steps: set.max_steps,
    };
    let f = |t: f64, y: &[f64; STATE_DIM]| {
        rhs.eval(t, &BlochState::from_array(y))
            .map(|d| d.to_array())
    };
    let stats = dopri::integrate_to_grid(
        f,
        initial_state(p).to_array(),
        &times,
        tol,
        |i, _, y| states[i] = BlochState::from_array(y),
    )?;
    let pulse = times.iter().map(|&t| rhs.pulse().amplitude(t)).collect();
    Ok(Trajectory {
        times,
        states,
        pulse,
        params: *p,
        stats,
    })
}

/// Integrates the decay-free twin of `p`, used to normalize the fidelity.
pub fn reference_run(p: &SystemParams, set: &IntegratorSettings) -> Result<Trajectory> {
    integrate(&p.without_decay(), set)
}
