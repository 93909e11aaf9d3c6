//! Run configuration.
//!
//! A single TOML document drives both execution modes. It names the mesh
//! (a file or a built-in grid), the material coefficients per region tag,
//! the discretization knobs (degree, penalties, time step), and the mode
//! specific sections: a refinement ladder for convergence studies, sources
//! and receivers for simulations. Loading keeps the raw text so outputs can
//! record a hash of exactly what was run.
//!
//! Every numeric default matches the value used throughout the test suite,
//! so a minimal config stays short: mode, mesh, materials, degree, time.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::assembly::PenaltyCoefficients;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::materials::{self, MaterialMap, MaterialRegion};
use crate::mesh::{brick, cartesian, PolyMesh};
use crate::sources::{GaussianCosinePulse, MomentTensor, PointMomentSource};
use crate::timeint::NewmarkParams;

/// Which driver a config selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    /// Manufactured-solution error study over a mesh or degree ladder.
    Convergence,
    /// Physical run with sources, receivers and snapshots.
    Simulate,
}

/// Built-in structured grid request.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    /// Domain extent along x as [min, max].
    pub x: [f64; 2],
    /// Domain extent along y as [min, max].
    pub y: [f64; 2],
    /// "cartesian" for axis-aligned quads, "brick" for a staggered layout.
    #[serde(default)]
    pub kind: GridKind,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    #[default]
    Cartesian,
    Brick,
}

/// Splits region tags along a coordinate axis, for layered media on
/// generated grids.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSplit {
    pub axis: Axis,
    /// Coordinate of the material interface.
    pub at: f64,
    /// Tag for cells whose centroid lies below the interface.
    pub below: i32,
    /// Tag for cells whose centroid lies at or above the interface.
    pub above: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// Mesh source: exactly one of `path` or `grid`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSpec {
    pub path: Option<PathBuf>,
    pub grid: Option<GridSpec>,
    pub split: Option<RegionSplit>,
}

/// Material coefficients for one region: an optional named preset with
/// field-by-field overrides. Without a preset every field is required.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSpec {
    pub preset: Option<String>,
    pub a0: Option<f64>,
    pub b0: Option<f64>,
    pub c0: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub lambda: Option<f64>,
    pub k: Option<f64>,
    pub theta: Option<f64>,
    pub rho_f: Option<f64>,
    pub rho_s: Option<f64>,
    pub phi: Option<f64>,
    pub a: Option<f64>,
    pub tau: Option<f64>,
}

impl MaterialSpec {
    /// Resolves preset and overrides into a full coefficient set.
    pub fn resolve(&self) -> Result<MaterialRegion> {
        let mut m = match self.preset.as_deref() {
            Some("sandstone") => materials::sandstone(),
            Some("sandstone_stiff") => materials::sandstone_stiff(),
            Some("convergence_test") => materials::convergence_test(),
            Some(other) => {
                return Err(Error::Config(format!("unknown material preset {other:?}")))
            }
            None => {
                let all = [
                    self.a0, self.b0, self.c0, self.alpha, self.beta, self.mu, self.lambda,
                    self.k, self.theta, self.rho_f, self.rho_s, self.phi, self.a, self.tau,
                ];
                if all.iter().any(Option::is_none) {
                    return Err(Error::Config(
                        "material without a preset must set every coefficient".into(),
                    ));
                }
                MaterialRegion {
                    a0: self.a0.unwrap(),
                    b0: self.b0.unwrap(),
                    c0: self.c0.unwrap(),
                    alpha: self.alpha.unwrap(),
                    beta: self.beta.unwrap(),
                    mu: self.mu.unwrap(),
                    lambda: self.lambda.unwrap(),
                    k: self.k.unwrap(),
                    theta: self.theta.unwrap(),
                    rho_f: self.rho_f.unwrap(),
                    rho_s: self.rho_s.unwrap(),
                    phi: self.phi.unwrap(),
                    a: self.a.unwrap(),
                    tau: self.tau.unwrap(),
                }
            }
        };
        if let Some(v) = self.a0 {
            m.a0 = v;
        }
        if let Some(v) = self.b0 {
            m.b0 = v;
        }
        if let Some(v) = self.c0 {
            m.c0 = v;
        }
        if let Some(v) = self.alpha {
            m.alpha = v;
        }
        if let Some(v) = self.beta {
            m.beta = v;
        }
        if let Some(v) = self.mu {
            m.mu = v;
        }
        if let Some(v) = self.lambda {
            m.lambda = v;
        }
        if let Some(v) = self.k {
            m.k = v;
        }
        if let Some(v) = self.theta {
            m.theta = v;
        }
        if let Some(v) = self.rho_f {
            m.rho_f = v;
        }
        if let Some(v) = self.rho_s {
            m.rho_s = v;
        }
        if let Some(v) = self.phi {
            m.phi = v;
        }
        if let Some(v) = self.a {
            m.a = v;
        }
        if let Some(v) = self.tau {
            m.tau = v;
        }
        Ok(m)
    }
}

/// Interior-penalty stabilization multipliers for the four bilinear forms:
/// elastic, volumetric, storage and conduction.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PenaltySpec {
    #[serde(default = "default_penalty")]
    pub alpha1: f64,
    #[serde(default = "default_penalty")]
    pub alpha2: f64,
    #[serde(default = "default_penalty")]
    pub alpha3: f64,
    #[serde(default = "default_penalty")]
    pub alpha4: f64,
}

fn default_penalty() -> f64 {
    10.0
}

impl Default for PenaltySpec {
    fn default() -> Self {
        PenaltySpec {
            alpha1: 10.0,
            alpha2: 10.0,
            alpha3: 10.0,
            alpha4: 10.0,
        }
    }
}

impl PenaltySpec {
    pub fn coefficients(&self) -> PenaltyCoefficients {
        PenaltyCoefficients {
            alpha1: self.alpha1,
            alpha2: self.alpha2,
            alpha3: self.alpha3,
            alpha4: self.alpha4,
        }
    }
}

/// Time discretization: step size, horizon and the two Newmark parameters.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSpec {
    pub dt: f64,
    pub t_final: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
}

fn default_beta() -> f64 {
    0.25
}

fn default_gamma() -> f64 {
    0.5
}

impl TimeSpec {
    pub fn newmark(&self) -> NewmarkParams {
        NewmarkParams {
            dt: self.dt,
            beta: self.beta,
            gamma: self.gamma,
        }
    }

    /// Number of steps from 0 to `t_final`; errors unless `dt` divides the
    /// horizon to within one part in 1e9.
    pub fn step_count(&self) -> Result<usize> {
        if !(self.dt > 0.0) || !(self.t_final > 0.0) {
            return Err(Error::Config("dt and t_final must be positive".into()));
        }
        let ratio = self.t_final / self.dt;
        let n = ratio.round();
        if n < 1.0 || (ratio - n).abs() > 1e-9 * n {
            return Err(Error::Config(format!(
                "dt = {} does not divide t_final = {} into whole steps",
                self.dt, self.t_final
            )));
        }
        Ok(n as usize)
    }
}

/// A point moment source with its pulse.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceSpec {
    pub position: [f64; 2],
    #[serde(default)]
    pub tensor: MomentTensor,
    #[serde(default)]
    pub pulse: GaussianCosinePulse,
}

impl SourceSpec {
    pub fn source(&self) -> PointMomentSource {
        PointMomentSource {
            position: Point2::new(self.position[0], self.position[1]),
            tensor: self.tensor,
            pulse: self.pulse,
        }
    }
}

/// A named observation point for time histories.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReceiverSpec {
    pub name: String,
    pub position: [f64; 2],
}

/// Uniform sampling raster over the mesh bounding box.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RasterSpec {
    pub nx: usize,
    pub ny: usize,
}

/// Where and how often outputs are written.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub directory: PathBuf,
    /// Write field snapshots every this many steps; 0 disables them.
    #[serde(default)]
    pub snapshot_every: usize,
    pub raster: Option<RasterSpec>,
}

/// Refinement ladder for a convergence study. Exactly one of `grids`,
/// `meshes` or `degrees` selects the ladder axis.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSpec {
    /// Manufactured case identifier; only "standard" is defined.
    #[serde(default = "default_case")]
    pub case: String,
    /// Cartesian n-by-n grids on the unit square, one entry per rung.
    pub grids: Option<Vec<usize>>,
    /// Mesh files, one per rung.
    pub meshes: Option<Vec<PathBuf>>,
    /// Polynomial degrees on the fixed mesh from the `[mesh]` section.
    pub degrees: Option<Vec<usize>>,
}

fn default_case() -> String {
    "standard".into()
}

/// The whole parsed configuration plus the raw text it came from.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: RunMode,
    pub mesh: Option<MeshSpec>,
    #[serde(default)]
    pub materials: BTreeMap<String, MaterialSpec>,
    pub space: SpaceSpec,
    #[serde(default)]
    pub penalties: PenaltySpec,
    pub time: TimeSpec,
    #[serde(default)]
    pub sources: Vec<SourceSpec>,
    #[serde(default)]
    pub receivers: Vec<ReceiverSpec>,
    pub output: OutputSpec,
    pub convergence: Option<ConvergenceSpec>,
    #[serde(skip)]
    raw: String,
}

/// Spatial discretization: the polynomial degree.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub degree: usize,
}

impl RunConfig {
    /// Parses a TOML document, retaining the text for hashing.
    pub fn from_str(text: &str) -> Result<Self> {
        let mut cfg: RunConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.raw = text.to_string();
        Ok(cfg)
    }

    /// Reads and parses a config file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str(&text)
    }

    /// Hex digest of the raw config text, recorded in run metadata.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.raw.as_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Builds the mesh this config names: loads the file or generates the
    /// grid, then applies the optional region split.
    pub fn resolve_mesh(&self) -> Result<PolyMesh> {
        let spec = self
            .mesh
            .as_ref()
            .ok_or_else(|| Error::Config("missing [mesh] section".into()))?;
        let mut mesh = match (&spec.path, &spec.grid) {
            (Some(path), None) => PolyMesh::load(path)?,
            (None, Some(g)) => {
                if g.nx == 0 || g.ny == 0 {
                    return Err(Error::Config("grid needs nx > 0 and ny > 0".into()));
                }
                if !(g.x[0] < g.x[1]) || !(g.y[0] < g.y[1]) {
                    return Err(Error::Config("grid extents must be increasing".into()));
                }
                match g.kind {
                    GridKind::Cartesian => cartesian(g.nx, g.ny, g.x, g.y),
                    GridKind::Brick => brick(g.nx, g.ny, g.x, g.y),
                }
            }
            _ => {
                return Err(Error::Config(
                    "[mesh] needs exactly one of `path` or `grid`".into(),
                ))
            }
        };
        if let Some(split) = &spec.split {
            let (axis, at, below, above) = (split.axis, split.at, split.below, split.above);
            mesh.assign_regions(|c| {
                let coord = match axis {
                    Axis::X => c.x,
                    Axis::Y => c.y,
                };
                if coord < at {
                    below
                } else {
                    above
                }
            });
        }
        Ok(mesh)
    }

    /// Resolves the material table. Keys are region tags; the single key
    /// "default" maps to tag 0 and to every tag a split introduces.
    pub fn resolve_materials(&self, mesh: &PolyMesh) -> Result<MaterialMap> {
        if self.materials.is_empty() {
            return Err(Error::Config("missing [materials] section".into()));
        }
        let mut map = BTreeMap::new();
        for (key, spec) in &self.materials {
            let region = spec.resolve()?;
            if key == "default" {
                for cell in &mesh.cells {
                    map.insert(cell.region, region);
                }
            } else {
                let tag: i32 = key.parse().map_err(|_| {
                    Error::Config(format!(
                        "material key {key:?} is neither \"default\" nor a region tag"
                    ))
                })?;
                map.insert(tag, region);
            }
        }
        Ok(MaterialMap { regions: map })
    }

    /// Checks the cross-cutting invariants: the mesh resolves, referenced
    /// files exist, materials cover every region tag and are admissible,
    /// receivers lie inside the mesh, and the step count divides evenly.
    /// Returns advisory warnings.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        if let Some(spec) = &self.mesh {
            if let Some(path) = &spec.path {
                if !path.exists() {
                    return Err(Error::Config(format!(
                        "mesh file {} does not exist",
                        path.display()
                    )));
                }
            }
        }
        if self.space.degree == 0 {
            return Err(Error::Config("degree must be at least 1".into()));
        }
        self.time.step_count()?;
        for p in [
            self.penalties.alpha1,
            self.penalties.alpha2,
            self.penalties.alpha3,
            self.penalties.alpha4,
        ] {
            if !(p > 0.0) {
                return Err(Error::Config("penalty multipliers must be positive".into()));
            }
        }
        match self.mode {
            RunMode::Convergence => {
                let conv = self.convergence.as_ref().ok_or_else(|| {
                    Error::Config("convergence mode needs a [convergence] section".into())
                })?;
                if conv.case != "standard" {
                    return Err(Error::Config(format!(
                        "unknown manufactured case {:?}",
                        conv.case
                    )));
                }
                let axes = [
                    conv.grids.is_some(),
                    conv.meshes.is_some(),
                    conv.degrees.is_some(),
                ];
                if axes.iter().filter(|&&b| b).count() != 1 {
                    return Err(Error::Config(
                        "[convergence] needs exactly one of `grids`, `meshes`, `degrees`".into(),
                    ));
                }
                if let Some(grids) = &conv.grids {
                    if grids.len() < 2 {
                        return Err(Error::Config("a ladder needs at least two rungs".into()));
                    }
                }
                if let Some(meshes) = &conv.meshes {
                    if meshes.len() < 2 {
                        return Err(Error::Config("a ladder needs at least two rungs".into()));
                    }
                    for path in meshes {
                        if !path.exists() {
                            return Err(Error::Config(format!(
                                "ladder mesh {} does not exist",
                                path.display()
                            )));
                        }
                    }
                }
                if let Some(degrees) = &conv.degrees {
                    if degrees.len() < 2 || degrees.iter().any(|&d| d == 0) {
                        return Err(Error::Config(
                            "a degree ladder needs at least two nonzero degrees".into(),
                        ));
                    }
                    if self.mesh.is_none() {
                        return Err(Error::Config(
                            "a degree ladder needs a fixed [mesh]".into(),
                        ));
                    }
                }
            }
            RunMode::Simulate => {
                let mesh = self.resolve_mesh()?;
                let materials = self.resolve_materials(&mesh)?;
                warnings.extend(materials.validate(&mesh)?);
                for r in &self.receivers {
                    let p = Point2::new(r.position[0], r.position[1]);
                    if mesh.locate(p).is_none() {
                        return Err(Error::Config(format!(
                            "receiver {:?} at ({}, {}) is outside the mesh",
                            r.name, r.position[0], r.position[1]
                        )));
                    }
                }
                for s in &self.sources {
                    let p = Point2::new(s.position[0], s.position[1]);
                    if mesh.locate(p).is_none() {
                        return Err(Error::Config(format!(
                            "source at ({}, {}) is outside the mesh",
                            s.position[0], s.position[1]
                        )));
                    }
                }
                let f_c = materials
                    .regions
                    .values()
                    .map(|m| m.critical_frequency())
                    .fold(f64::INFINITY, f64::min);
                for s in &self.sources {
                    if s.pulse.frequency >= f_c {
                        warnings.push(format!(
                            "source frequency {} Hz is at or above the critical frequency \
                             {f_c:.3e} Hz; the low-frequency flow model is questionable there",
                            s.pulse.frequency
                        ));
                    }
                }
            }
        }
        let mut names = std::collections::BTreeSet::new();
        for r in &self.receivers {
            if !names.insert(&r.name) {
                return Err(Error::Config(format!(
                    "duplicate receiver name {:?}",
                    r.name
                )));
            }
        }
        Ok(warnings)
    }
}
