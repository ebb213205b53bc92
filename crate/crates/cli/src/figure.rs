//! Data series behind the two correlation-vs-κt figures.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use qcorr_core::sweep::sweep;
use qcorr_core::{AmidConfig, Measure, NoiseKind, StateKind, SweepConfig};

use crate::output::write_csv;
use crate::CliError;

/// One curve (or MID/AMID pair of curves) of a figure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Series {
    pub file_stem: &'static str,
    pub state: StateKind,
    pub noise: NoiseKind,
    pub measure: Measure,
}

const fn series(file_stem: &'static str, state: StateKind, noise: NoiseKind, measure: Measure) -> Series {
    Series {
        file_stem,
        state,
        noise,
        measure,
    }
}

const FIGURE_1: [Series; 5] = [
    series("fig1_ghz_x_mid", StateKind::Ghz, NoiseKind::PauliX, Measure::Mid),
    series("fig1_ghz_x_amid", StateKind::Ghz, NoiseKind::PauliX, Measure::Amid),
    series("fig1_ghz_y_both", StateKind::Ghz, NoiseKind::PauliY, Measure::Both),
    series("fig1_ghz_z_both", StateKind::Ghz, NoiseKind::PauliZ, Measure::Both),
    series("fig1_ghz_iso_both", StateKind::Ghz, NoiseKind::Isotropic, Measure::Both),
];

// W-X and W-Y share one MID curve.
const FIGURE_2: [Series; 5] = [
    series("fig2_w_xy_mid", StateKind::W, NoiseKind::PauliX, Measure::Mid),
    series("fig2_w_x_amid", StateKind::W, NoiseKind::PauliX, Measure::Amid),
    series("fig2_w_y_amid", StateKind::W, NoiseKind::PauliY, Measure::Amid),
    series("fig2_w_z_both", StateKind::W, NoiseKind::PauliZ, Measure::Both),
    series("fig2_w_iso_both", StateKind::W, NoiseKind::Isotropic, Measure::Both),
];

pub fn figure_series(id: u8) -> Result<&'static [Series], CliError> {
    match id {
        1 => Ok(&FIGURE_1),
        2 => Ok(&FIGURE_2),
        other => Err(CliError::Usage(format!("figure id must be 1 or 2, got {other}"))),
    }
}

/// Writes one CSV per series into `out_dir` and returns the paths in
/// series order.
pub fn write_figure(id: u8, out_dir: &Path, amid: &AmidConfig) -> Result<Vec<PathBuf>, CliError> {
    let list = figure_series(id)?;
    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut paths = Vec::with_capacity(list.len());
    for s in list {
        let mut cfg = SweepConfig::new(s.state, s.noise, s.measure);
        cfg.amid = *amid;
        let rows = sweep(&cfg)?;
        let path = out_dir.join(format!("{}.csv", s.file_stem));
        let file = File::create(&path).map_err(|e| CliError::io(&path, e))?;
        write_csv(&rows, BufWriter::new(file)).map_err(|e| CliError::Output(e.to_string()))?;
        paths.push(path);
    }
    Ok(paths)
}
