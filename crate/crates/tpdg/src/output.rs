//! Run outputs: snapshots, traces, rate tables and metadata.
//!
//! All files are plain text with pinned formats, written with Rust's
//! shortest round-trip float formatting so identical runs produce
//! byte-identical files. Snapshots come in two forms: a legacy ASCII VTK
//! unstructured grid carrying cell-wise values on the polygonal mesh, for
//! visualization, and a raster CSV sampled on a uniform grid, which is
//! what the snapshot comparison consumes. Receiver traces and convergence
//! tables are CSV; run metadata is a small key/value file.
//!
//! Layout under the output directory:
//! - `rates.csv`: error ladder from a convergence run
//! - `receivers/<name>.csv`: per-receiver time histories
//! - `snapshots/step_<k>.vtk`, `snapshots/raster_<k>.csv`: field snapshots
//! - `run.meta`: config hash, sizes, wall time per phase

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::mesh::PolyMesh;
use crate::sampling::Observables;
use crate::verification::ErrorReport;

/// Columns of a raster snapshot, in order.
pub const RASTER_HEADER: &str = "x,y,vmag,vy,qy,T,vx,qx";

/// Columns of a receiver trace, in order.
pub const RECEIVER_HEADER: &str = "t,vmag,vy,qy,T";

/// Sink for every artifact of one run, rooted at an output directory.
pub struct OutputWriter {
    dir: PathBuf,
}

/// Run provenance and cost summary written to `run.meta`.
#[derive(Clone, Debug, Default)]
pub struct RunMeta {
    pub config_hash: String,
    pub version: String,
    pub n_cells: usize,
    pub degree: usize,
    /// Total unknowns across the three fields.
    pub n_dofs: usize,
    pub steps: usize,
    /// Wall-clock seconds per phase, in execution order.
    pub phases: Vec<(String, f64)>,
    pub warnings: Vec<String>,
}

impl OutputWriter {
    /// Creates the output directory (and parents) if needed.
    pub fn create(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(OutputWriter {
            dir: dir.to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn subdir(&self, name: &str) -> Result<PathBuf> {
        let d = self.dir.join(name);
        std::fs::create_dir_all(&d)?;
        Ok(d)
    }

    /// Writes a cell-wise snapshot as a legacy ASCII VTK unstructured
    /// grid, one polygon per cell with the observables as cell data.
    pub fn write_snapshot_vtk(
        &self,
        step: usize,
        mesh: &PolyMesh,
        obs: &[Observables],
    ) -> Result<PathBuf> {
        assert_eq!(obs.len(), mesh.n_cells());
        let path = self.subdir("snapshots")?.join(format!("step_{step}.vtk"));
        std::fs::write(&path, vtk_snapshot(mesh, obs))?;
        Ok(path)
    }

    /// Writes a raster snapshot CSV with the pinned column order.
    pub fn write_snapshot_raster(
        &self,
        step: usize,
        points: &[Point2],
        obs: &[Observables],
    ) -> Result<PathBuf> {
        assert_eq!(obs.len(), points.len());
        let path = self.subdir("snapshots")?.join(format!("raster_{step}.csv"));
        std::fs::write(&path, raster_csv(points, obs))?;
        Ok(path)
    }

    /// Writes one receiver's time history.
    pub fn write_receiver(
        &self,
        name: &str,
        times: &[f64],
        samples: &[Observables],
    ) -> Result<PathBuf> {
        assert_eq!(times.len(), samples.len());
        let mut text = String::from(RECEIVER_HEADER);
        text.push('\n');
        for (t, o) in times.iter().zip(samples) {
            let _ = writeln!(
                text,
                "{:e},{:e},{:e},{:e},{:e}",
                t, o.vmag, o.vy, o.qy, o.temperature
            );
        }
        let path = self.subdir("receivers")?.join(format!("{name}.csv"));
        std::fs::write(&path, text)?;
        Ok(path)
    }

    /// Writes the convergence ladder table.
    pub fn write_rates(&self, report: &ErrorReport) -> Result<PathBuf> {
        let path = self.dir.join("rates.csv");
        std::fs::write(&path, report.csv())?;
        Ok(path)
    }

    /// Writes run metadata as `key = value` lines.
    pub fn write_meta(&self, meta: &RunMeta) -> Result<PathBuf> {
        let mut text = String::new();
        let _ = writeln!(text, "config_hash = {}", meta.config_hash);
        let _ = writeln!(text, "version = {}", meta.version);
        let _ = writeln!(text, "cells = {}", meta.n_cells);
        let _ = writeln!(text, "degree = {}", meta.degree);
        let _ = writeln!(text, "dofs = {}", meta.n_dofs);
        let _ = writeln!(text, "steps = {}", meta.steps);
        for (phase, seconds) in &meta.phases {
            let _ = writeln!(text, "seconds_{phase} = {seconds:.3}");
        }
        for w in &meta.warnings {
            let _ = writeln!(text, "warning = {w}");
        }
        let path = self.dir.join("run.meta");
        std::fs::write(&path, text)?;
        Ok(path)
    }
}

fn vtk_snapshot(mesh: &PolyMesh, obs: &[Observables]) -> String {
    let mut s = String::new();
    s.push_str("# vtk DataFile Version 3.0\n");
    s.push_str("field snapshot\n");
    s.push_str("ASCII\n");
    s.push_str("DATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(s, "POINTS {} double", mesh.vertices.len());
    for v in &mesh.vertices {
        let _ = writeln!(s, "{:e} {:e} 0", v.x, v.y);
    }
    let list_len: usize = mesh.cells.iter().map(|c| c.vertices.len() + 1).sum();
    let _ = writeln!(s, "CELLS {} {}", mesh.n_cells(), list_len);
    for c in &mesh.cells {
        let _ = write!(s, "{}", c.vertices.len());
        for &v in &c.vertices {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "CELL_TYPES {}", mesh.n_cells());
    for _ in 0..mesh.n_cells() {
        s.push_str("7\n");
    }
    let _ = writeln!(s, "CELL_DATA {}", mesh.n_cells());
    for (name, pick) in FIELDS {
        let _ = writeln!(s, "SCALARS {name} double 1");
        s.push_str("LOOKUP_TABLE default\n");
        for o in obs {
            let _ = writeln!(s, "{:e}", pick(o));
        }
    }
    s
}

type FieldPick = fn(&Observables) -> f64;
const FIELDS: [(&str, FieldPick); 4] = [
    ("vmag", |o| o.vmag),
    ("vy", |o| o.vy),
    ("qy", |o| o.qy),
    ("temperature", |o| o.temperature),
];

fn raster_csv(points: &[Point2], obs: &[Observables]) -> String {
    let mut s = String::from(RASTER_HEADER);
    s.push('\n');
    for (p, o) in points.iter().zip(obs) {
        let _ = writeln!(
            s,
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            p.x, p.y, o.vmag, o.vy, o.qy, o.temperature, o.vx, o.qx
        );
    }
    s
}

/// Reads a raster snapshot back; the inverse of the raster writer.
pub fn read_raster_csv(path: &Path) -> Result<(Vec<Point2>, Vec<Observables>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == RASTER_HEADER => {}
        other => {
            return Err(Error::Config(format!(
                "{} is not a raster snapshot (header {:?})",
                path.display(),
                other
            )))
        }
    }
    let mut points = Vec::new();
    let mut obs = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|c| c.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| {
                Error::Config(format!("{} line {}: {e}", path.display(), i + 2))
            })?;
        if vals.len() != 8 {
            return Err(Error::Config(format!(
                "{} line {}: expected 8 columns, found {}",
                path.display(),
                i + 2,
                vals.len()
            )));
        }
        points.push(Point2::new(vals[0], vals[1]));
        obs.push(Observables {
            vmag: vals[2],
            vy: vals[3],
            qy: vals[4],
            temperature: vals[5],
            vx: vals[6],
            qx: vals[7],
        });
    }
    Ok((points, obs))
}

/// Lists the raster snapshots in a run's snapshot directory, sorted by
/// step number.
pub fn list_rasters(dir: &Path) -> Result<Vec<(usize, PathBuf)>> {
    let snap = dir.join("snapshots");
    let base = if snap.is_dir() { snap } else { dir.to_path_buf() };
    let mut out = Vec::new();
    for entry in std::fs::read_dir(&base)? {
        let path = entry?.path();
        let name = match path.file_name().and_then(|n| n.to_str()) {
            Some(n) => n,
            None => continue,
        };
        if let Some(num) = name
            .strip_prefix("raster_")
            .and_then(|r| r.strip_suffix(".csv"))
        {
            if let Ok(step) = num.parse::<usize>() {
                out.push((step, path));
            }
        }
    }
    out.sort_by_key(|(step, _)| *step);
    Ok(out)
}
