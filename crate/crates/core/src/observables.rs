//! Observables derived from integrated trajectories: phase shift, photon
//! loss, distinguishability, qubit coherence and the normalized fidelity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{integrate, reference_run, IntegratorSettings, Trajectory};
use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Largest overlap exponent `|beta - beta~|^2 / 2` that is exponentiated.
pub const MAX_OVERLAP_EXPONENT: f64 = 700.0;

/// Everything reported for one run, normalized against its decay-free twin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "RunRecord", from = "RunRecord")]
pub struct RunReport {
    pub theta: f64,
    pub alpha_final: Complex64,
    pub loss_fraction: f64,
    pub d: f64,
    pub rho10_mag: f64,
    pub f_r: f64,
    pub f_i: f64,
    pub f: f64,
    pub rho_ee_max: f64,
    pub loss_consistency_rel: f64,
    /// `|beta - beta~(inf)|^2 / 2`, the log of the inverse pulse-state overlap.
    pub overlap_exponent: f64,
}

/// Flat key-value form used for JSON reports and CSV rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub theta: f64,
    pub alpha_final_re: f64,
    pub alpha_final_im: f64,
    pub loss_fraction: f64,
    pub d: f64,
    pub rho10_mag: f64,
    #[serde(rename = "F_r")]
    pub f_r: f64,
    #[serde(rename = "F_i")]
    pub f_i: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub rho_ee_max: f64,
    pub loss_consistency_rel: f64,
    pub overlap_exponent: f64,
}

impl RunRecord {
    pub const FIELDS: [&'static str; 12] = [
        "theta",
        "alpha_final_re",
        "alpha_final_im",
        "loss_fraction",
        "d",
        "rho10_mag",
        "F_r",
        "F_i",
        "F",
        "rho_ee_max",
        "loss_consistency_rel",
        "overlap_exponent",
    ];

    pub fn values(&self) -> [f64; 12] {
        [
            self.theta,
            self.alpha_final_re,
            self.alpha_final_im,
            self.loss_fraction,
            self.d,
            self.rho10_mag,
            self.f_r,
            self.f_i,
            self.f,
            self.rho_ee_max,
            self.loss_consistency_rel,
            self.overlap_exponent,
        ]
    }
}

impl From<RunReport> for RunRecord {
    fn from(r: RunReport) -> Self {
        Self {
            theta: r.theta,
            alpha_final_re: r.alpha_final.re,
            alpha_final_im: r.alpha_final.im,
            loss_fraction: r.loss_fraction,
            d: r.d,
            rho10_mag: r.rho10_mag,
            f_r: r.f_r,
            f_i: r.f_i,
            f: r.f,
            rho_ee_max: r.rho_ee_max,
            loss_consistency_rel: r.loss_consistency_rel,
            overlap_exponent: r.overlap_exponent,
        }
    }
}

impl From<RunRecord> for RunReport {
    fn from(r: RunRecord) -> Self {
        Self {
            theta: r.theta,
            alpha_final: Complex64::new(r.alpha_final_re, r.alpha_final_im),
            loss_fraction: r.loss_fraction,
            d: r.d,
            rho10_mag: r.rho10_mag,
            f_r: r.f_r,
            f_i: r.f_i,
            f: r.f,
            rho_ee_max: r.rho_ee_max,
            loss_consistency_rel: r.loss_consistency_rel,
            overlap_exponent: r.overlap_exponent,
        }
    }
}

/// Principal argument of the final field amplitude.
pub fn phase_shift(traj: &Trajectory) -> Result<f64> {
    let a = traj.final_state().alpha_t;
    if a.norm() == 0.0 {
        return Err(Error::ZeroAmplitude);
    }
    Ok(a.arg())
}

/// Magnitude of the qubit coherence after the pulse, `|Sigma10(inf)|`.
pub fn coherence_magnitude(traj: &Trajectory) -> f64 {
    traj.final_state().sigma_10.norm()
}

/// `|beta - beta~(inf)|^2 / 2` with `beta~ = mu alpha~ + nu alpha~*`.
pub fn overlap_exponent(traj: &Trajectory) -> f64 {
    let sq = &traj.params.squeeze;
    let beta = sq.alpha_to_beta(traj.params.alpha);
    let beta_t = sq.alpha_to_beta(traj.final_state().alpha_t);
    0.5 * (beta - beta_t).norm_sqr()
}

/// Coherence of the joint qubit-pulse state, `exp(|beta - beta~|^2 / 2) |Sigma10|`.
///
/// This undoes the pulse-state overlap folded into `Sigma10`. It is not
/// bounded by the initial coherence once the pulse acquires a phase, so the
/// reported fidelity uses [`coherence_magnitude`] instead.
pub fn joint_coherence_magnitude(traj: &Trajectory) -> Result<f64> {
    let exponent = overlap_exponent(traj);
    if exponent > MAX_OVERLAP_EXPONENT {
        return Err(Error::AnsatzBreakdown { exponent });
    }
    Ok(exponent.exp() * coherence_magnitude(traj))
}

/// `F = (1 + 2 |rho10|) / 2`.
pub fn fidelity(rho10_mag: f64) -> f64 {
    0.5 * (1.0 + 2.0 * rho10_mag)
}

/// `d = |alpha~(inf)| sin(theta)`.
pub fn distinguishability(traj: &Trajectory) -> f64 {
    let a = traj.final_state().alpha_t;
    if a.norm() == 0.0 {
        return 0.0;
    }
    a.norm() * a.arg().sin()
}

/// `|alpha - |alpha~(inf)|| / |alpha|`.
pub fn loss_fraction(traj: &Trajectory) -> f64 {
    let a0 = traj.params.alpha.norm();
    if a0 == 0.0 {
        return 0.0;
    }
    (a0 - traj.final_state().alpha_t.norm()).abs() / a0
}

/// Photon-number loss predicted from the excited-state population,
/// `2 Gamma int rho_ee K / (2 rho11(0)) dt`, by trapezoid quadrature over the
/// trajectory samples.
pub fn decay_loss_integral(traj: &Trajectory) -> f64 {
    let p = &traj.params;
    if p.rho11_0 <= 0.0 || p.atom_decay == 0.0 {
        return 0.0;
    }
    let area: f64 = traj
        .times
        .windows(2)
        .zip(traj.states.windows(2))
        .map(|(t, s)| 0.5 * (t[1] - t[0]) * (s[0].rho_ee + s[1].rho_ee))
        .sum();
    2.0 * p.atom_decay * area * p.squeeze.enhancement() / (2.0 * p.rho11_0)
}

/// Relative mismatch between the photon loss seen in the trajectory and the
/// loss integral. With no predicted loss, returns the drift of `|alpha~|^2`
/// relative to `|alpha|^2` instead.
pub fn loss_consistency(traj: &Trajectory) -> f64 {
    let a0_sq = traj.params.alpha.norm_sqr();
    let observed = a0_sq - traj.final_state().alpha_t.norm_sqr();
    let predicted = decay_loss_integral(traj);
    if predicted > 0.0 {
        (observed - predicted).abs() / predicted
    } else if a0_sq > 0.0 {
        observed.abs() / a0_sq
    } else {
        0.0
    }
}

/// Builds the report for `traj`, normalizing its fidelity by `reference`.
pub fn build_report(traj: &Trajectory, reference: &Trajectory) -> RunReport {
    let alpha_final = traj.final_state().alpha_t;
    let rho10_mag = coherence_magnitude(traj);
    let f_r = fidelity(rho10_mag);
    let f_i = fidelity(coherence_magnitude(reference));
    RunReport {
        theta: phase_shift(traj).unwrap_or(0.0),
        alpha_final,
        loss_fraction: loss_fraction(traj),
        d: distinguishability(traj),
        rho10_mag,
        f_r,
        f_i,
        f: f_r / f_i,
        rho_ee_max: traj.max_rho_ee(),
        loss_consistency_rel: loss_consistency(traj),
        overlap_exponent: overlap_exponent(traj),
    }
}

/// Integrates `p` and its decay-free twin and reports `F = F_r / F_i`.
pub fn normalized_fidelity(p: &SystemParams, set: &IntegratorSettings) -> Result<RunReport> {
    let (report, _) = run_with_trajectory(p, set)?;
    Ok(report)
}

/// As [`normalized_fidelity`], also returning the main trajectory.
pub fn run_with_trajectory(
    p: &SystemParams,
    set: &IntegratorSettings,
) -> Result<(RunReport, Trajectory)> {
    let traj = integrate(p, set)?;
    let report = if p.atom_decay == 0.0 {
        build_report(&traj, &traj)
    } else {
        build_report(&traj, &reference_run(p, set)?)
    };
    Ok((report, traj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::two_pi_ghz;

    fn settings() -> IntegratorSettings {
        IntegratorSettings {
            samples: 801,
            ..Default::default()
        }
    }

    #[test]
    fn fidelity_endpoints() {
        assert_eq!(fidelity(0.5), 1.0);
        assert_eq!(fidelity(0.0), 0.5);
        assert!((fidelity(0.4997) - 0.9997).abs() < 1e-15);
        let mut last = fidelity(0.0);
        for i in 1..=50 {
            let f = fidelity(i as f64 * 0.01);
            assert!(f > last);
            last = f;
        }
    }

    #[test]
    fn zero_coupling_run() {
        let p = SystemParams {
            g: 0.0,
            ..SystemParams::fig2()
        };
        let (r, traj) = run_with_trajectory(&p, &settings()).unwrap();
        assert_eq!(r.theta, 0.0);
        assert_eq!(r.d, 0.0);
        assert_eq!(r.rho10_mag, 0.5);
        assert_eq!(r.f, 1.0);
        assert_eq!(loss_consistency(&traj), 0.0);
        assert_eq!(joint_coherence_magnitude(&traj).unwrap(), 0.5);
    }

    #[test]
    fn decay_free_run_is_its_own_reference() {
        let p = SystemParams::baseline_a().without_decay();
        let r = normalized_fidelity(&p, &settings()).unwrap();
        assert_eq!(r.f, 1.0);
        assert_eq!(r.f_r, r.f_i);
        assert!((r.rho10_mag - 0.5).abs() < 1e-6);
    }

    #[test]
    fn empty_field_has_no_phase() {
        let p = SystemParams {
            alpha: Complex64::new(0.0, 0.0),
            ..SystemParams::fig2()
        };
        let (r, traj) = run_with_trajectory(&p, &settings()).unwrap();
        assert!(matches!(phase_shift(&traj), Err(Error::ZeroAmplitude)));
        assert_eq!(r.d, 0.0);
        assert_eq!(r.loss_fraction, 0.0);
        assert_eq!(r.f, 1.0);
    }

    #[test]
    fn no_initial_coherence() {
        let p = SystemParams {
            rho10_0: Complex64::new(0.0, 0.0),
            ..SystemParams::fig2()
        };
        let r = normalized_fidelity(&p, &settings()).unwrap();
        assert_eq!(r.rho10_mag, 0.0);
        assert_eq!(r.f_r, 0.5);
    }

    #[test]
    fn distinguishability_is_sine_of_phase() {
        let (r, traj) = run_with_trajectory(&SystemParams::fig2(), &settings()).unwrap();
        let a = traj.final_state().alpha_t.norm();
        assert!((r.d / a - r.theta.sin()).abs() < 1e-15);
        assert!((r.d - 100.0 * (-0.01353f64).sin()).abs() < 0.02);
    }

    #[test]
    fn joint_coherence_exceeds_initial_once_phase_builds() {
        let traj = integrate(&SystemParams::fig2(), &settings()).unwrap();
        assert!(overlap_exponent(&traj) > 1.0);
        assert!(joint_coherence_magnitude(&traj).unwrap() > 0.5);
    }

    #[test]
    fn overlap_overflow_is_reported() {
        let mut traj = integrate(
            &SystemParams {
                g: 0.0,
                ..SystemParams::fig2()
            },
            &settings(),
        )
        .unwrap();
        traj.states.last_mut().unwrap().alpha_t = Complex64::new(-100.0, 0.0);
        assert!(matches!(
            joint_coherence_magnitude(&traj),
            Err(Error::AnsatzBreakdown { .. })
        ));
    }

    #[test]
    fn decay_free_loss_consistency_is_tiny() {
        let p = SystemParams::fig2().without_decay();
        let traj = integrate(&p, &settings()).unwrap();
        assert!(loss_consistency(&traj) < 1e-12);
    }

    #[test]
    fn report_invariants_over_coupling() {
        for g in [0.05, 0.1, 0.2] {
            let p = SystemParams {
                g: two_pi_ghz(g),
                ..SystemParams::fig2()
            };
            let r = normalized_fidelity(&p, &settings()).unwrap();
            assert!(r.theta < 0.0);
            assert!(r.f_r > 0.0 && r.f_r <= 1.0 + 1e-6);
            assert!(r.f_i > 0.0 && r.f_i <= 1.0 + 1e-6);
            assert_eq!(r.f, r.f_r / r.f_i);
            assert!(r.loss_fraction >= 0.0);
        }
    }

    #[test]
    fn json_round_trip() {
        let r = normalized_fidelity(&SystemParams::baseline_a(), &settings()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with("{\"theta\":"));
        assert!(s.contains("\"F_r\":"));
        let back: RunReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
