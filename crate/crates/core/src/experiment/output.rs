//! CSV and JSON writers. Numbers are written in decimal notation with 12
//! significant digits; columns are in a fixed order.

use std::f64::consts::PI;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use super::phase_match::PhaseMatchRow;
use super::sweep::SweepRow;
use crate::bloch::Trajectory;
use crate::error::{Error, Result};
use crate::observables::{RunRecord, RunReport};

pub const TRAJECTORY_COLUMNS: [&str; 11] = [
    "t_ns",
    "rho_ee",
    "rho_e1_re",
    "rho_e1_im",
    "alpha_re",
    "alpha_im",
    "sigma_e0_re",
    "sigma_e0_im",
    "sigma_10_re",
    "sigma_10_im",
    "S_t",
];

pub const PHASE_MATCH_COLUMNS: [&str; 8] = [
    "theta_target",
    "r",
    "g_found_over_2pi_GHz",
    "theta",
    "F",
    "F_r",
    "F_i",
    "error",
];

/// Rounds to 12 significant digits and prints without an exponent or
/// trailing zeros.
pub fn format_value(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let rounded: f64 = sci.parse().unwrap();
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let wrap = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv_writer(path)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(&row).map_err(wrap)?;
    }
    w.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_trajectory_csv(path: &Path, traj: &Trajectory) -> Result<()> {
    let rows = traj
        .times
        .iter()
        .zip(&traj.states)
        .zip(&traj.pulse)
        .map(|((&t, s), &drive)| {
            [
                t,
                s.rho_ee,
                s.rho_e1.re,
                s.rho_e1.im,
                s.alpha_t.re,
                s.alpha_t.im,
                s.sigma_e0.re,
                s.sigma_e0.im,
                s.sigma_10.re,
                s.sigma_10.im,
                drive,
            ]
            .iter()
            .map(|&v| format_value(v))
            .collect()
        });
    write_rows(path, &TRAJECTORY_COLUMNS, rows)
}

pub fn sweep_header() -> Vec<&'static str> {
    let mut h = vec!["swept_name", "swept_value"];
    h.extend(RunRecord::FIELDS);
    h.push("error");
    h
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let records = rows.iter().map(|row| {
        let mut out = vec![row.swept_name.to_string(), format_value(row.swept_value)];
        match &row.result {
            Ok(report) => {
                out.extend(RunRecord::from(*report).values().iter().map(|&v| format_value(v)));
                out.push(String::new());
            }
            Err(e) => {
                out.extend(std::iter::repeat(String::new()).take(RunRecord::FIELDS.len()));
                out.push(e.clone());
            }
        }
        out
    });
    write_rows(path, &sweep_header(), records)
}

pub fn write_phase_match_csv(path: &Path, rows: &[PhaseMatchRow]) -> Result<()> {
    let records = rows.iter().map(|row| {
        let mut out = vec![format_value(row.theta_target), format_value(row.r)];
        match &row.result {
            Ok(m) => {
                out.extend(
                    [
                        m.g / (2.0 * PI),
                        m.report.theta,
                        m.report.f,
                        m.report.f_r,
                        m.report.f_i,
                    ]
                    .iter()
                    .map(|&v| format_value(v)),
                );
                out.push(String::new());
            }
            Err(e) => {
                out.extend(std::iter::repeat(String::new()).take(5));
                out.push(e.clone());
            }
        }
        out
    });
    write_rows(path, &PHASE_MATCH_COLUMNS, records)
}

/// Writes the report as a JSON object with a stable key order.
pub fn write_report(path: &Path, report: &RunReport) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = File::create(path).map_err(io)?;
    serde_json::to_writer_pretty(&mut f, report)?;
    f.write_all(b"\n").map_err(io)
}

pub fn read_report(path: &Path) -> Result<RunReport> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(0.5), "0.5");
        assert_eq!(format_value(-0.0135335164045), "-0.0135335164045");
        assert_eq!(format_value(1.3e-7), "0.00000013");
        assert_eq!(format_value(100.0), "100");
        assert_eq!(format_value(1.0 / 3.0), "0.333333333333");
    }

    proptest! {
        #[test]
        fn formatted_values_keep_twelve_digits(x in -1e6f64..1e6) {
            let s = format_value(x);
            prop_assert!(!s.contains('e'));
            let back: f64 = s.parse().unwrap();
            prop_assert!((back - x).abs() <= 1e-11 * x.abs().max(1e-300));
        }
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.csv");
        write_sweep_csv(&path, &[]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("swept_name,swept_value,theta,"));
        assert!(text.trim_end().ends_with(",error"));

        let path = dir.path().join("pm.csv");
        write_phase_match_csv(&path, &[]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.trim_end(), PHASE_MATCH_COLUMNS.join(","));
    }

    #[test]
    fn report_file_round_trip() {
        let report = RunReport {
            theta: -0.013533516404503067,
            alpha_final: Complex64::new(99.99, -1.35),
            loss_fraction: 1.352e-7,
            d: -1.3533,
            rho10_mag: 0.49972514767697856,
            f_r: 0.9997251476769786,
            f_i: 1.0,
            f: 0.9997251476769786,
            rho_ee_max: 0.0114,
            loss_consistency_rel: 0.013,
            overlap_exponent: 6.77,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        write_report(&path, &report).unwrap();
        assert_eq!(read_report(&path).unwrap(), report);
    }

    #[test]
    fn io_errors_carry_path() {
        let err = write_sweep_csv(Path::new("/nonexistent/dir/x.csv"), &[]).unwrap_err();
        assert!(err.is_io());
        assert!(err.to_string().contains("/nonexistent/dir/x.csv"));
    }
}
