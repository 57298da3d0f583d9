//! Matched-phase comparison: for each target phase and squeeze factor, find
//! the coupling `g` that produces that phase and report the fidelity there.

use rayon::prelude::*;

use crate::approx::approx_phase;
use crate::bloch::{integrate, IntegratorSettings};
use crate::error::{Error, Result};
use crate::model::{two_pi_ghz, SqueezeTransform, SystemParams};
use crate::observables::{normalized_fidelity, phase_shift, RunReport};

pub const MAX_BISECTION_STEPS: usize = 100;
const MONOTONE_SAMPLES: usize = 8;
/// Half-width of the initial bracket around the approximate root, relative.
const SEED_WIDTH: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatchSpec {
    pub theta_targets: Vec<f64>,
    pub r_values: Vec<f64>,
    pub base: SystemParams,
    /// Coupling bracket in rad/ns.
    pub g_bracket: (f64, f64),
    pub rel_tol: f64,
    pub settings: IntegratorSettings,
}

impl PhaseMatchSpec {
    /// Ten log-spaced targets from -0.002 to -0.02 rad, `r` in {1, 0}.
    pub fn defaults(base: SystemParams, settings: IntegratorSettings) -> Self {
        let (a, b) = (0.002f64.ln(), 0.02f64.ln());
        let theta_targets = (0..10)
            .map(|i| -(a + (b - a) * i as f64 / 9.0).exp())
            .collect();
        Self {
            theta_targets,
            r_values: vec![1.0, 0.0],
            base,
            g_bracket: (two_pi_ghz(0.005), two_pi_ghz(0.36)),
            rel_tol: 1e-4,
            settings,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.theta_targets.is_empty() {
            return Err(Error::invalid("theta_targets", "no targets"));
        }
        let sign = self.theta_targets[0].signum();
        if self
            .theta_targets
            .iter()
            .any(|&t| !t.is_finite() || t == 0.0 || t.signum() != sign)
        {
            return Err(Error::invalid(
                "theta_targets",
                "targets must be finite, non-zero and share a sign",
            ));
        }
        if self.r_values.is_empty() {
            return Err(Error::invalid("r_values", "no squeeze factors"));
        }
        for &r in &self.r_values {
            SqueezeTransform::new(r, self.base.squeeze.phi())?;
        }
        let (lo, hi) = self.g_bracket;
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
            return Err(Error::invalid("g_bracket", "need 0 <= lo < hi"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::invalid("rel_tol", "must lie in (0, 1)"));
        }
        self.base.validate()?;
        self.settings.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatchRow {
    pub theta_target: f64,
    pub r: f64,
    pub result: std::result::Result<MatchedRun, String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedRun {
    /// Coupling found, rad/ns.
    pub g: f64,
    pub bisection_steps: usize,
    pub report: RunReport,
}

/// Finds `x` in `[lo, hi]` with `f(x)` within `rel_tol` (relative) of
/// `target`, given `f(lo)` and `f(hi)` on opposite sides of it.
pub fn bisect<F>(
    mut f: F,
    (mut lo, mut hi): (f64, f64),
    (mut f_lo, f_hi): (f64, f64),
    target: f64,
    rel_tol: f64,
    max_steps: usize,
) -> Result<(f64, f64, usize)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let scale = target.abs();
    let close = |v: f64| (v - target).abs() <= rel_tol * scale;
    if close(f_lo) {
        return Ok((lo, f_lo, 0));
    }
    if close(f_hi) {
        return Ok((hi, f_hi, 0));
    }
    if (f_lo - target).signum() == (f_hi - target).signum() {
        return Err(Error::NoBracket {
            target,
            lo: f_lo,
            hi: f_hi,
        });
    }
    let mut rel_err = f64::INFINITY;
    for step in 1..=max_steps {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if close(f_mid) {
            return Ok((mid, f_mid, step));
        }
        rel_err = (f_mid - target).abs() / scale;
        if (f_mid - target).signum() == (f_lo - target).signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        steps: max_steps,
        rel_err,
    })
}

fn with_coupling(p: &SystemParams, g: f64) -> SystemParams {
    SystemParams { g, ..*p }
}

fn simulated_phase(p: &SystemParams, g: f64, set: &IntegratorSettings) -> Result<f64> {
    let q = with_coupling(p, g);
    if g == 0.0 {
        return Ok(0.0);
    }
    phase_shift(&integrate(&q, set)?)
}

/// Samples the bracket and checks that `|theta|` strictly increases with `g`.
fn monotone_samples(
    p: &SystemParams,
    (lo, hi): (f64, f64),
    set: &IntegratorSettings,
) -> Result<Vec<(f64, f64)>> {
    let samples = (0..MONOTONE_SAMPLES)
        .map(|i| {
            let g = lo + (hi - lo) * i as f64 / (MONOTONE_SAMPLES - 1) as f64;
            Ok((g, simulated_phase(p, g, set)?))
        })
        .collect::<Result<Vec<_>>>()?;
    for w in samples.windows(2) {
        if !(w[1].1.abs() > w[0].1.abs()) {
            return Err(Error::NonMonotone { g: w[1].0 });
        }
    }
    Ok(samples)
}

/// Inverts the far-detuned phase estimate for a starting guess.
fn seed_coupling(p: &SystemParams, (lo, hi): (f64, f64), target: f64) -> Result<f64> {
    let phase = |g: f64| approx_phase(&with_coupling(p, g));
    let (a, b) = (phase(lo)?, phase(hi)?);
    let (g, _, _) = bisect(phase, (lo, hi), (a, b), target, 1e-10, MAX_BISECTION_STEPS)
        .map_err(|e| match e {
            Error::NonConvergence { .. } => e,
            _ => Error::NoBracket { target, lo: a, hi: b },
        })?;
    Ok(g)
}

fn match_one(
    p: &SystemParams,
    spec: &PhaseMatchSpec,
    samples: &[(f64, f64)],
    target: f64,
) -> Result<MatchedRun> {
    let set = &spec.settings;
    let (lo, hi) = spec.g_bracket;
    let seed = seed_coupling(p, (lo, hi), target)?;

    // Tight bracket around the seed, falling back to the sampled interval
    // that straddles the target.
    let a = (seed * (1.0 - SEED_WIDTH)).max(lo);
    let b = (seed * (1.0 + SEED_WIDTH)).min(hi);
    let (fa, fb) = (simulated_phase(p, a, set)?, simulated_phase(p, b, set)?);
    let straddles = |x: f64, y: f64| (x - target) * (y - target) <= 0.0;
    let (bracket, values) = if straddles(fa, fb) {
        ((a, b), (fa, fb))
    } else {
        let w = samples
            .windows(2)
            .find(|w| straddles(w[0].1, w[1].1))
            .ok_or(Error::NoBracket {
                target,
                lo: samples[0].1,
                hi: samples[samples.len() - 1].1,
            })?;
        ((w[0].0, w[1].0), (w[0].1, w[1].1))
    };
    let (g, _, steps) = bisect(
        |g| simulated_phase(p, g, set),
        bracket,
        values,
        target,
        spec.rel_tol,
        MAX_BISECTION_STEPS,
    )?;
    let report = normalized_fidelity(&with_coupling(p, g), set)?;
    Ok(MatchedRun {
        g,
        bisection_steps: steps,
        report,
    })
}

/// Runs the comparison. Rows are ordered by `r` (as given), then target.
pub fn run_phase_match(spec: &PhaseMatchSpec, parallel: bool) -> Result<Vec<PhaseMatchRow>> {
    spec.validate()?;
    let per_r: Vec<(SystemParams, std::result::Result<Vec<(f64, f64)>, String>)> = spec
        .r_values
        .iter()
        .map(|&r| {
            let p = SystemParams {
                squeeze: SqueezeTransform::new(r, spec.base.squeeze.phi())?,
                ..spec.base
            };
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|p| {
            let s = monotone_samples(&p, spec.g_bracket, &spec.settings).map_err(|e| e.to_string());
            (p, s)
        })
        .collect();

    let jobs: Vec<(usize, f64)> = (0..spec.r_values.len())
        .flat_map(|i| spec.theta_targets.iter().map(move |&t| (i, t)))
        .collect();
    let run = |&(i, target): &(usize, f64)| {
        let (p, samples) = &per_r[i];
        let result = match samples {
            Err(e) => Err(e.clone()),
            Ok(s) => match_one(p, spec, s, target).map_err(|e| e.to_string()),
        };
        PhaseMatchRow {
            theta_target: target,
            r: spec.r_values[i],
            result,
        }
    };
    Ok(if parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_square_root() {
        let (x, fx, _) = bisect(
            |x| Ok(x * x),
            (0.0, 4.0),
            (0.0, 16.0),
            2.0,
            1e-12,
            100,
        )
        .unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-11);
        assert!((fx - 2.0).abs() < 1e-11);
    }

    #[test]
    fn bisect_reports_missing_bracket_and_budget() {
        let r = bisect(|x| Ok(x), (0.0, 1.0), (0.0, 1.0), 5.0, 1e-6, 100);
        assert!(matches!(r, Err(Error::NoBracket { .. })));
        let r = bisect(|x| Ok(x), (0.0, 1.0), (0.0, 1.0), 0.3, 1e-15, 3);
        assert!(matches!(r, Err(Error::NonConvergence { steps: 3, .. })));
    }

    #[test]
    fn default_targets() {
        let spec = PhaseMatchSpec::defaults(SystemParams::fig2(), IntegratorSettings::default());
        assert_eq!(spec.theta_targets.len(), 10);
        assert!((spec.theta_targets[0] + 0.002).abs() < 1e-15);
        assert!((spec.theta_targets[9] + 0.02).abs() < 1e-15);
        spec.validate().unwrap();
    }

    #[test]
    fn rejects_mixed_signs() {
        let mut spec =
            PhaseMatchSpec::defaults(SystemParams::fig2(), IntegratorSettings::default());
        spec.theta_targets = vec![-0.01, 0.01];
        assert!(spec.validate().is_err());
        spec.theta_targets = vec![0.0];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn unreachable_target_is_no_bracket() {
        let p = SystemParams::fig2();
        let r = seed_coupling(&p, (two_pi_ghz(0.01), two_pi_ghz(0.02)), -0.02);
        assert!(matches!(r, Err(Error::NoBracket { .. })));
    }
}
