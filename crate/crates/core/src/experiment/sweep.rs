//! One-parameter sweeps with per-point fidelity normalization.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::bloch::{integrate, IntegratorSettings, Trajectory};
use crate::error::{Error, Result};
use crate::model::{two_pi_ghz, SqueezeTransform, SystemParams};
use crate::observables::{build_report, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParameter {
    /// `Gamma / 2pi` in GHz.
    Gamma,
    Alpha,
    /// `g / 2pi` in GHz.
    G,
    /// Squeeze factor `r` with `g (cosh^2 r + sinh^2 r)` held at its `r = 1` value.
    RWithGRescale,
    /// `log10(sigma / 3 ns)`.
    Sigma,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::Gamma => "Gamma_over_2pi_GHz",
            SweepParameter::Alpha => "alpha",
            SweepParameter::G => "g_over_2pi_GHz",
            SweepParameter::RWithGRescale => "r",
            SweepParameter::Sigma => "log10_sigma_over_3ns",
        }
    }

    pub fn for_figure(figure: u32) -> Result<Self> {
        Ok(match figure {
            3 => SweepParameter::Gamma,
            4 => SweepParameter::Alpha,
            5 => SweepParameter::G,
            6 => SweepParameter::RWithGRescale,
            7 => SweepParameter::Sigma,
            _ => {
                return Err(Error::Config(format!(
                    "no sweep defined for figure {figure}; expected 3 to 7"
                )))
            }
        })
    }

    pub fn default_grid(&self) -> Grid {
        match self {
            SweepParameter::Gamma => Grid::Log {
                start: 1e-3,
                end: 1.0,
                count: 25,
            },
            SweepParameter::Alpha => Grid::Linear {
                start: 10.0,
                end: 300.0,
                count: 30,
            },
            SweepParameter::G => Grid::Linear {
                start: 0.05,
                end: 0.5,
                count: 30,
            },
            SweepParameter::RWithGRescale => Grid::Linear {
                start: 0.0,
                end: 2.0,
                count: 21,
            },
            SweepParameter::Sigma => Grid::Linear {
                start: 0.0,
                end: 3.0,
                count: 16,
            },
        }
    }

    /// `base` with the swept quantity set to `value`. For the squeeze sweep,
    /// `base.g` is the coupling at `r = 1`.
    pub fn apply(&self, base: &SystemParams, value: f64) -> Result<SystemParams> {
        let p = match self {
            SweepParameter::Gamma => SystemParams {
                atom_decay: two_pi_ghz(value),
                ..*base
            },
            SweepParameter::Alpha => SystemParams {
                alpha: num_complex::Complex64::new(value, 0.0),
                ..*base
            },
            SweepParameter::G => SystemParams {
                g: two_pi_ghz(value),
                ..*base
            },
            SweepParameter::RWithGRescale => {
                let weight = |r: f64| r.cosh().powi(2) + r.sinh().powi(2);
                SystemParams {
                    squeeze: SqueezeTransform::new(value, base.squeeze.phi())?,
                    g: base.g * weight(1.0) / weight(value),
                    ..*base
                }
            }
            SweepParameter::Sigma => SystemParams {
                sigma: 3.0 * 10f64.powf(value),
                ..*base
            },
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Explicit(Vec<f64>),
    Linear { start: f64, end: f64, count: usize },
    /// Log-spaced in magnitude; `start` and `end` must share a sign.
    Log { start: f64, end: f64, count: usize },
}

impl Grid {
    /// Parses `lin:a:b:n`, `log:a:b:n`, or a comma-separated list.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Config(format!("grid `{s}`: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() == 4 && (parts[0] == "lin" || parts[0] == "log") {
            let num = |x: &str| x.trim().parse::<f64>().map_err(|_| bad("bad number"));
            let start = num(parts[1])?;
            let end = num(parts[2])?;
            let count = parts[3].trim().parse::<usize>().map_err(|_| bad("bad count"))?;
            return Ok(if parts[0] == "lin" {
                Grid::Linear { start, end, count }
            } else {
                Grid::Log { start, end, count }
            });
        }
        let values = s
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("expected lin:a:b:n, log:a:b:n or a comma-separated list"))?;
        Ok(Grid::Explicit(values))
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        let spaced = |start: f64, end: f64, count: usize, f: &dyn Fn(f64) -> f64| {
            if count == 1 {
                return vec![start];
            }
            (0..count)
                .map(|i| {
                    if i == 0 {
                        start
                    } else if i == count - 1 {
                        end
                    } else {
                        f(i as f64 / (count - 1) as f64)
                    }
                })
                .collect()
        };
        let v = match *self {
            Grid::Explicit(ref v) => v.clone(),
            Grid::Linear { start, end, count } => {
                spaced(start, end, count, &|x| start + x * (end - start))
            }
            Grid::Log { start, end, count } => {
                if !(start * end > 0.0) {
                    return Err(Error::invalid("grid", "log grid endpoints must share a sign"));
                }
                let sign = start.signum();
                let (a, b) = (start.abs().ln(), end.abs().ln());
                spaced(start, end, count, &|x| sign * (a + x * (b - a)).exp())
            }
        };
        if v.is_empty() {
            return Err(Error::invalid("grid", "grid is empty"));
        }
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("grid", "grid values must be finite"));
        }
        let inc = v.windows(2).all(|w| w[1] > w[0]);
        let dec = v.windows(2).all(|w| w[1] < w[0]);
        if !(inc || dec) {
            return Err(Error::invalid("grid", "grid must be strictly monotone"));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub grid: Vec<f64>,
    pub base: SystemParams,
    pub settings: IntegratorSettings,
}

impl SweepSpec {
    pub fn new(
        parameter: SweepParameter,
        grid: &Grid,
        base: SystemParams,
        settings: IntegratorSettings,
    ) -> Result<Self> {
        let spec = Self {
            parameter,
            grid: grid.values()?,
            base,
            settings,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        Grid::Explicit(self.grid.clone()).values()?;
        self.settings.validate()?;
        for &v in &self.grid {
            self.parameter.apply(&self.base, v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept_name: &'static str,
    pub swept_value: f64,
    pub result: std::result::Result<RunReport, String>,
}

// Bit pattern of every parameter except Gamma.
fn reference_key(p: &SystemParams) -> [u64; 14] {
    let q = p.without_decay();
    [
        q.g.to_bits(),
        q.detuning.to_bits(),
        q.qubit_splitting.to_bits(),
        q.kappa.to_bits(),
        q.cavity_decay.to_bits(),
        q.sigma.to_bits(),
        q.alpha.re.to_bits(),
        q.alpha.im.to_bits(),
        q.squeeze.r().to_bits(),
        q.squeeze.phi().to_bits(),
        q.rho00_0.to_bits(),
        q.rho11_0.to_bits(),
        q.rho10_0.re.to_bits(),
        q.rho10_0.im.to_bits(),
    ]
}

fn map_maybe_parallel<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

/// Runs every grid point, normalizing each by a decay-free reference that is
/// computed once per distinct non-`Gamma` parameter set. Point failures are
/// recorded in the row; rows come back sorted by swept value.
pub fn run_sweep(spec: &SweepSpec, parallel: bool) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let points: Vec<(f64, SystemParams)> = spec
        .grid
        .iter()
        .map(|&v| Ok((v, spec.parameter.apply(&spec.base, v)?)))
        .collect::<Result<_>>()?;

    let mut ref_index = HashMap::new();
    let mut ref_params = Vec::new();
    for (_, p) in &points {
        ref_index.entry(reference_key(p)).or_insert_with(|| {
            ref_params.push(p.without_decay());
            ref_params.len() - 1
        });
    }
    let settings = spec.settings;
    let references: Vec<std::result::Result<Trajectory, String>> =
        map_maybe_parallel(&ref_params, parallel, |p| {
            integrate(p, &settings).map_err(|e| format!("reference run: {e}"))
        });

    let mut rows = map_maybe_parallel(&points, parallel, |(v, p)| {
        let reference = &references[ref_index[&reference_key(p)]];
        let result = match reference {
            Err(e) => Err(e.clone()),
            Ok(r) => integrate(p, &settings)
                .map(|traj| build_report(&traj, r))
                .map_err(|e| e.to_string()),
        };
        SweepRow {
            swept_name: spec.parameter.name(),
            swept_value: *v,
            result,
        }
    });
    rows.sort_by(|a, b| a.swept_value.total_cmp(&b.swept_value));
    Ok(rows)
}
