//! CSV and JSON serialization of sweep results.

use std::io::Write;

use qcorr_core::{CorrelationPoint, SweepConfig};
use serde::Serialize;

pub const CSV_HEADER: [&str; 6] = ["kt", "mid", "amid", "mutual_information", "s_rho", "s_pi_rho"];
pub const SIGNIFICANT_DIGITS: usize = 9;

/// `%.9g`-style formatting: 9 significant digits, trailing zeros dropped,
/// scientific notation outside `[1e-5, 1e9)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let p = SIGNIFICANT_DIGITS - 1;
    let sci = format!("{x:.p$e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[CorrelationPoint], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            format_sig(r.kt),
            format_sig(r.mid),
            r.amid.map(format_sig).unwrap_or_default(),
            format_sig(r.mutual_information),
            format_sig(r.s_rho),
            format_sig(r.s_pi_rho),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    config: &'a SweepConfig,
    points: &'a [CorrelationPoint],
}

pub fn write_json<W: Write>(config: &SweepConfig, rows: &[CorrelationPoint], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &SweepDocument { config, points: rows })?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcorr_core::{Measure, NoiseKind, StateKind};

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.05), "0.05");
        assert_eq!(format_sig(0.188721875), "0.188721875");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig(2.0 / 3.0), "0.666666667");
        assert_eq!(format_sig(-1.5e-10), "-1.5e-10");
        assert_eq!(format_sig(123456789.4), "123456789");
        assert_eq!(format_sig(1234567890.0), "1.23456789e+09");
        assert_eq!(format_sig(9.9999999996), "10");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
    }

    fn point(kt: f64, amid: Option<f64>) -> CorrelationPoint {
        CorrelationPoint {
            kt,
            mid: 1.0,
            amid,
            mutual_information: 2.0,
            s_rho: 0.0,
            s_pi_rho: 1.0,
        }
    }

    #[test]
    fn csv_header_and_empty_amid() {
        let mut buf = Vec::new();
        write_csv(&[point(0.0, None), point(0.05, Some(0.5))], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "kt,mid,amid,mutual_information,s_rho,s_pi_rho");
        assert_eq!(lines[1], "0,1,,2,0,1");
        assert_eq!(lines[2], "0.05,1,0.5,2,0,1");
    }

    #[test]
    fn json_carries_config() {
        let cfg = SweepConfig::new(StateKind::W, NoiseKind::Isotropic, Measure::Both);
        let mut buf = Vec::new();
        write_json(&cfg, &[point(0.0, Some(1.0))], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["config"]["noise"], "iso");
        assert_eq!(v["config"]["amid"]["seed"], 42);
        let back: SweepConfig = serde_json::from_value(v["config"].clone()).unwrap();
        assert_eq!(back, cfg);
    }
}
