use num_complex::Complex64;

use cqed_core::bloch::{integrate, reference_run, IntegratorSettings};
use cqed_core::model::{two_pi_ghz, two_pi_mhz, SqueezeTransform};
use cqed_core::observables::normalized_fidelity;
use cqed_core::{Error, SystemParams};

fn family() -> Vec<SystemParams> {
    let mut out = Vec::new();
    for &(alpha, r) in &[(10.0, 0.0), (100.0, 1.0), (50.0, 0.5)] {
        for &g in &[0.05, 0.17] {
            for &gamma_mhz in &[1.0, 10.0, 300.0] {
                out.push(SystemParams {
                    alpha: Complex64::new(alpha, 0.0),
                    squeeze: SqueezeTransform::new(r, std::f64::consts::FRAC_PI_2).unwrap(),
                    g: two_pi_ghz(g),
                    atom_decay: two_pi_mhz(gamma_mhz),
                    ..SystemParams::fig2()
                });
            }
        }
    }
    out
}

#[test]
fn excited_population_relaxes_after_pulse() {
    let set = IntegratorSettings::default();
    for p in family() {
        let traj = integrate(&p, &set).unwrap();
        let end = traj.final_state().rho_ee;
        assert!(
            end < 1e-3 * traj.max_rho_ee(),
            "rho_ee(end) = {end:e}, max = {:e}",
            traj.max_rho_ee()
        );
    }
}

#[test]
fn decay_free_field_keeps_its_amplitude() {
    let set = IntegratorSettings::default();
    for p in family() {
        let traj = reference_run(&p, &set).unwrap();
        let drift = traj.final_state().alpha_t.norm() / p.alpha.norm() - 1.0;
        assert!(drift.abs() < 1e-10, "relative drift {drift:e}");
    }
}

#[test]
fn coherence_never_exceeds_initial_value() {
    let set = IntegratorSettings::default();
    for p in family() {
        let traj = integrate(&p, &set).unwrap();
        let bound = p.rho10_0.norm() * (1.0 + 1e-6);
        for s in &traj.states {
            assert!(s.sigma_10.norm() <= bound);
        }
    }
}

#[test]
fn phase_is_negative_below_the_qubit() {
    let set = IntegratorSettings::default();
    for p in family() {
        let r = normalized_fidelity(&p, &set).unwrap();
        assert!(r.theta < 0.0, "theta = {}", r.theta);
        assert!(r.f <= 1.0 + 1e-9 && r.f > 0.5);
    }
}

#[test]
fn strong_drive_trips_the_dispersive_guard() {
    let p = SystemParams {
        g: two_pi_ghz(1.0),
        ..SystemParams::fig2()
    };
    let err = integrate(&p, &IntegratorSettings::default()).unwrap_err();
    assert!(matches!(err, Error::DispersiveRegimeViolation { .. }), "{err}");
    assert!(err.is_numerical());
}

#[test]
fn output_grid_is_hit_exactly() {
    let p = SystemParams::baseline_a();
    let set = IntegratorSettings::default();
    let traj = integrate(&p, &set).unwrap();
    assert_eq!(traj.len(), set.samples);
    assert_eq!(traj.times[0], -set.window_sigmas * p.sigma);
    assert_eq!(*traj.times.last().unwrap(), set.window_sigmas * p.sigma);
}

#[test]
fn squeezed_baseline_fidelity_lies_in_reported_interval() {
    let r = normalized_fidelity(&SystemParams::fig2(), &IntegratorSettings::default()).unwrap();
    assert!((0.999..=0.9999).contains(&r.f), "F = {}", r.f);
}
