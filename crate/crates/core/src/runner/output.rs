//! CSV emission for sweep results and Haar curves.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::complexity::FluctuationCurve;
use crate::error::{Error, Result};
use crate::runner::ExperimentResult;

pub const POINTS_HEADER: &str = "arch,n_cores,qubits_per_core,gpc,sw,sw_over_gpc,gate_count,dh";
pub const SUMMARY_HEADER: &str = "arch,n_cores,qubits_per_core,gpc,sw,sw_over_gpc,id_h";

/// Formats with 10 significant digits. Plain notation for magnitudes in
/// `[1e-5, 1e15)`, scientific otherwise.
pub fn fmt_sig(x: f64) -> String {
    const SIG: i32 = 10;
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs();
    if !(1e-5..1e15).contains(&mag) {
        return format!("{:.*e}", (SIG - 1) as usize, x);
    }
    let exp = mag.log10().floor() as i32;
    let decimals = (SIG - 1 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new leading digit (9.99.. -> 10.0..).
    if decimals > 0 && significant_digits(&s) > SIG as usize {
        return format!("{x:.prec$}", prec = decimals - 1);
    }
    s
}

fn significant_digits(s: &str) -> usize {
    s.trim_start_matches('-')
        .trim_start_matches(['0', '.'])
        .chars()
        .filter(|c| c.is_ascii_digit())
        .count()
}

fn cell_prefix(r: &ExperimentResult) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.cell.architecture,
        r.cell.partition.num_cores(),
        r.cell.partition.qubits_per_core(),
        r.cell.gpc,
        r.sw,
        fmt_sig(r.sw_over_gpc)
    )
}

/// One row per checkpoint per cell.
pub fn points_csv(results: &[ExperimentResult]) -> String {
    let mut out = String::from(POINTS_HEADER);
    out.push('\n');
    for r in results {
        let prefix = cell_prefix(r);
        for &(g, dh) in &r.dh_points {
            let _ = writeln!(out, "{prefix},{g},{}", fmt_sig(dh));
        }
    }
    out
}

/// One row per cell. `id_h` is left empty for cells with fewer than two
/// checkpoints.
pub fn summary_csv(results: &[ExperimentResult]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in results {
        let id_h = r.id_h.map(fmt_sig).unwrap_or_default();
        let _ = writeln!(out, "{},{id_h}", cell_prefix(r));
    }
    out
}

pub fn haar_csv(curve: &FluctuationCurve) -> String {
    let mut out = String::from("k,std\n");
    for (k, v) in curve.values().iter().enumerate() {
        let _ = writeln!(out, "{},{}", k + 1, fmt_sig(*v));
    }
    out
}

/// `results.csv` -> `results_summary.csv`, next to the points file.
pub fn summary_path(points_path: &Path) -> PathBuf {
    let stem = points_path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "results".into());
    points_path.with_file_name(format!("{stem}_summary.csv"))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes the points CSV to `path` and the summary CSV beside it; returns
/// the summary path.
pub fn write_results(path: &Path, results: &[ExperimentResult]) -> Result<PathBuf> {
    let summary = summary_path(path);
    write_file(path, &points_csv(results))?;
    write_file(&summary, &summary_csv(results))?;
    Ok(summary)
}
