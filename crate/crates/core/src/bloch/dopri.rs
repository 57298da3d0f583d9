//! Dormand-Prince 5(4) stepping with per-component error control.

use super::state::STATE_DIM;
use crate::error::{Error, Result};

type Vector = [f64; STATE_DIM];

// Butcher tableau.
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order weights minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn axpy(y: &Vector, terms: &[(f64, &Vector)]) -> Vector {
    let mut out = *y;
    for (w, k) in terms {
        for i in 0..STATE_DIM {
            out[i] += w * k[i];
        }
    }
    out
}

/// Integrates `dy/dt = f(t, y)` from `t0`, stopping exactly on each entry of
/// `outputs` (which must be increasing and start at `t0`), and calls `emit`
/// with the state there.
pub fn integrate_to_grid<F, E>(
    f: F,
    y0: Vector,
    outputs: &[f64],
    tol: Tolerances,
    mut emit: E,
) -> Result<StepStats>
where
    F: Fn(f64, &Vector) -> Result<Vector>,
    E: FnMut(usize, f64, &Vector),
{
    let mut stats = StepStats::default();
    let Some(&t0) = outputs.first() else {
        return Ok(stats);
    };
    let t_end = *outputs.last().unwrap();
    let mut t = t0;
    let mut y = y0;
    emit(0, t, &y);
    if outputs.len() == 1 {
        return Ok(stats);
    }

    let mut k1 = f(t, &y)?;
    stats.evaluations += 1;
    let mut h = initial_step(&f, t, &y, &k1, t_end - t0, tol, &mut stats)?;
    let mut next = 1;

    while next < outputs.len() {
        if stats.accepted + stats.rejected >= tol.max_steps {
            return Err(Error::TooManySteps {
                t,
                max_steps: tol.max_steps,
            });
        }
        let target = outputs[next];
        let remaining = target - t;
        let clamped = h >= remaining * (1.0 - 1e-12);
        let h_try = if clamped { remaining } else { h };
        if h_try <= 1e-14 * t.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { t, h: h_try });
        }

        let k2 = f(t + C2 * h_try, &axpy(&y, &[(h_try * A21, &k1)]))?;
        let k3 = f(
            t + C3 * h_try,
            &axpy(&y, &[(h_try * A31, &k1), (h_try * A32, &k2)]),
        )?;
        let k4 = f(
            t + C4 * h_try,
            &axpy(&y, &[(h_try * A41, &k1), (h_try * A42, &k2), (h_try * A43, &k3)]),
        )?;
        let k5 = f(
            t + C5 * h_try,
            &axpy(
                &y,
                &[
                    (h_try * A51, &k1),
                    (h_try * A52, &k2),
                    (h_try * A53, &k3),
                    (h_try * A54, &k4),
                ],
            ),
        )?;
        let k6 = f(
            t + h_try,
            &axpy(
                &y,
                &[
                    (h_try * A61, &k1),
                    (h_try * A62, &k2),
                    (h_try * A63, &k3),
                    (h_try * A64, &k4),
                    (h_try * A65, &k5),
                ],
            ),
        )?;
        let y_new = axpy(
            &y,
            &[
                (h_try * A71, &k1),
                (h_try * A73, &k3),
                (h_try * A74, &k4),
                (h_try * A75, &k5),
                (h_try * A76, &k6),
            ],
        );
        let t_new = if clamped { target } else { t + h_try };
        let k7 = f(t_new, &y_new)?;
        stats.evaluations += 6;

        let mut err: f64 = 0.0;
        for i in 0..STATE_DIM {
            let e = h_try
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs());
            err = err.max(e.abs() / scale);
        }

        let factor = if !err.is_finite() {
            MIN_FACTOR
        } else if err == 0.0 {
            MAX_FACTOR
        } else {
            (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
        };

        if err <= 1.0 {
            stats.accepted += 1;
            t = t_new;
            y = y_new;
            k1 = k7;
            let proposed = h_try * factor;
            // A step shortened to land on an output time says nothing about
            // the admissible step size; keep the larger proposal.
            h = if clamped { proposed.max(h) } else { proposed };
            if clamped {
                emit(next, t, &y);
                next += 1;
            }
        } else {
            stats.rejected += 1;
            h = h_try * factor.min(1.0);
        }
    }
    Ok(stats)
}

// Starting step from the usual two-derivative estimate.
fn initial_step<F>(
    f: &F,
    t: f64,
    y: &Vector,
    dy: &Vector,
    span: f64,
    tol: Tolerances,
    stats: &mut StepStats,
) -> Result<f64>
where
    F: Fn(f64, &Vector) -> Result<Vector>,
{
    let norm = |v: &Vector| {
        let mut m: f64 = 0.0;
        for i in 0..STATE_DIM {
            m = m.max(v[i].abs() / (tol.atol + tol.rtol * y[i].abs()));
        }
        m
    };
    let d0 = norm(y);
    let d1 = norm(dy);
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6 * span
    } else {
        0.01 * d0 / d1
    };
    let h0 = h0.min(span);
    let y1 = axpy(y, &[(h0, dy)]);
    let dy1 = f(t + h0, &y1)?;
    stats.evaluations += 1;
    let mut diff = [0.0; STATE_DIM];
    for i in 0..STATE_DIM {
        diff[i] = dy1[i] - dy[i];
    }
    let d2 = norm(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6 * span)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    Ok((100.0 * h0).min(h1).min(span))
}
