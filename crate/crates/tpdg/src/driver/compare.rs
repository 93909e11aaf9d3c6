//! Snapshot comparison between two completed runs.
//!
//! Given the output directories of two simulations on the same mesh and
//! raster, this pairs their raster snapshots by step number and computes
//! three pointwise difference fields over the solid velocity: the
//! magnitude of the vector difference, the cosine of the angle the two
//! velocities subtend, and the difference of their magnitudes. This is
//! how a run with thermal coupling is set against its isothermal
//! counterpart to see where and how much heat alters the wave field.

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::Vector2;
use crate::output::{list_rasters, read_raster_csv};
use std::fmt::Write as _;

/// Summary of one paired snapshot: extremes of the difference fields.
#[derive(Clone, Debug)]
pub struct SnapshotComparison {
    pub step: usize,
    /// Largest |v_a - v_b| over the raster.
    pub max_difference: f64,
    /// Smallest cosine between the two velocity directions.
    pub min_cosine: f64,
    /// Largest better-or-worse gap | |v_a| - |v_b| |.
    pub max_magnitude_gap: f64,
    /// Largest |v_a|, for normalizing the differences.
    pub peak_magnitude: f64,
    /// Written difference CSV, when an output directory was given.
    pub path: Option<PathBuf>,
}

/// Cosine of the angle between two velocities; parallel by convention
/// when either vanishes, since a zero vector has no direction to differ.
fn cosine(a: Vector2, b: Vector2) -> f64 {
    let denom = a.norm() * b.norm();
    if denom == 0.0 {
        1.0
    } else {
        (a.dot(&b) / denom).clamp(-1.0, 1.0)
    }
}

/// Compares every snapshot step the two runs share. With `out` set, a
/// `diff_<step>.csv` per pair lands there with columns
/// `x,y,dmag,cos,magdiff`.
pub fn compare_runs(
    dir_a: &Path,
    dir_b: &Path,
    out: Option<&Path>,
) -> Result<Vec<SnapshotComparison>> {
    let rasters_a = list_rasters(dir_a)?;
    let rasters_b = list_rasters(dir_b)?;
    if rasters_a.is_empty() || rasters_b.is_empty() {
        return Err(Error::Config(format!(
            "no raster snapshots to compare under {} and {}",
            dir_a.display(),
            dir_b.display()
        )));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
    }

    let steps_b: std::collections::BTreeMap<usize, &PathBuf> =
        rasters_b.iter().map(|(s, p)| (*s, p)).collect();
    let mut results = Vec::new();
    for (step, path_a) in &rasters_a {
        let Some(path_b) = steps_b.get(step) else {
            continue;
        };
        let (points_a, obs_a) = read_raster_csv(path_a)?;
        let (points_b, obs_b) = read_raster_csv(path_b)?;
        if points_a != points_b {
            return Err(Error::Config(format!(
                "step {step}: the two runs sampled different rasters"
            )));
        }

        let mut text = String::from("x,y,dmag,cos,magdiff\n");
        let mut max_difference: f64 = 0.0;
        let mut min_cosine: f64 = 1.0;
        let mut max_magnitude_gap: f64 = 0.0;
        let mut peak_magnitude: f64 = 0.0;
        for ((p, a), b) in points_a.iter().zip(&obs_a).zip(&obs_b) {
            let va = Vector2::new(a.vx, a.vy);
            let vb = Vector2::new(b.vx, b.vy);
            let dmag = (va - vb).norm();
            let cos = cosine(va, vb);
            let magdiff = va.norm() - vb.norm();
            max_difference = max_difference.max(dmag);
            min_cosine = min_cosine.min(cos);
            max_magnitude_gap = max_magnitude_gap.max(magdiff.abs());
            peak_magnitude = peak_magnitude.max(va.norm());
            let _ = writeln!(text, "{:e},{:e},{:e},{:e},{:e}", p.x, p.y, dmag, cos, magdiff);
        }

        let path = match out {
            Some(dir) => {
                let p = dir.join(format!("diff_{step}.csv"));
                std::fs::write(&p, text)?;
                Some(p)
            }
            None => None,
        };
        results.push(SnapshotComparison {
            step: *step,
            max_difference,
            min_cosine,
            max_magnitude_gap,
            peak_magnitude,
            path,
        });
    }
    if results.is_empty() {
        return Err(Error::Config(
            "the two runs have no snapshot step in common".into(),
        ));
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use crate::output::OutputWriter;
    use crate::sampling::Observables;

    fn obs(vx: f64, vy: f64) -> Observables {
        Observables {
            vmag: (vx * vx + vy * vy).sqrt(),
            vx,
            vy,
            qx: 0.0,
            qy: 0.0,
            temperature: 0.0,
        }
    }

    fn write_run(dir: &Path, step: usize, fields: &[(f64, f64)]) {
        let writer = OutputWriter::create(dir).unwrap();
        let points: Vec<Point2> = (0..fields.len())
            .map(|i| Point2::new(i as f64, 0.5))
            .collect();
        let obs: Vec<Observables> = fields.iter().map(|&(x, y)| obs(x, y)).collect();
        writer.write_snapshot_raster(step, &points, &obs).unwrap();
    }

    #[test]
    fn difference_fields_match_hand_values() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let out = tempfile::tempdir().unwrap();
        // Point 0: identical. Point 1: opposite directions, same length.
        // Point 2: same direction, half the length.
        write_run(a.path(), 10, &[(1.0, 0.0), (0.0, 2.0), (3.0, 4.0)]);
        write_run(b.path(), 10, &[(1.0, 0.0), (0.0, -2.0), (1.5, 2.0)]);
        let results = compare_runs(a.path(), b.path(), Some(out.path())).unwrap();
        assert_eq!(results.len(), 1);
        let r = &results[0];
        assert_eq!(r.step, 10);
        assert!((r.max_difference - 4.0).abs() < 1e-12, "opposite 2-vectors differ by 4");
        assert!((r.min_cosine + 1.0).abs() < 1e-12);
        assert!((r.max_magnitude_gap - 2.5).abs() < 1e-12, "5 vs 2.5 length");
        assert!((r.peak_magnitude - 5.0).abs() < 1e-12);
        let text = std::fs::read_to_string(r.path.as_ref().unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,dmag,cos,magdiff");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].ends_with(",0e0,1e0,0e0"), "identical point: {}", lines[1]);
    }

    #[test]
    fn zero_velocity_counts_as_aligned() {
        assert_eq!(cosine(Vector2::zeros(), Vector2::new(1.0, 0.0)), 1.0);
        assert_eq!(cosine(Vector2::zeros(), Vector2::zeros()), 1.0);
    }

    #[test]
    fn mismatched_rasters_are_rejected() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        write_run(a.path(), 1, &[(1.0, 0.0)]);
        {
            let writer = OutputWriter::create(b.path()).unwrap();
            let points = vec![Point2::new(99.0, 0.5)];
            writer
                .write_snapshot_raster(1, &points, &[obs(1.0, 0.0)])
                .unwrap();
        }
        let err = compare_runs(a.path(), b.path(), None).unwrap_err();
        assert!(err.to_string().contains("different rasters"));
    }

    #[test]
    fn disjoint_steps_are_an_error() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        write_run(a.path(), 1, &[(1.0, 0.0)]);
        write_run(b.path(), 2, &[(1.0, 0.0)]);
        let err = compare_runs(a.path(), b.path(), None).unwrap_err();
        assert!(err.to_string().contains("no snapshot step in common"));
    }
}
