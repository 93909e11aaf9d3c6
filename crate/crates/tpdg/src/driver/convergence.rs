//! Manufactured-solution convergence studies.
//!
//! A study integrates the manufactured problem on a ladder of meshes (or
//! of polynomial degrees), measures the final-time errors in the dG and
//! L2 norms together with the recovered pressure, and tabulates observed
//! rates. The driver wraps a study with config handling, output files and
//! the acceptance gate: on a mesh ladder, every solution field must show
//! a dG rate of at least `degree - 0.25` between the last two rungs.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::assembly::{assemble_forms, build_block_system, LoadAssembler, PenaltyCoefficients};
use crate::config::{RunConfig, RunMode};
use crate::error::{Error, Result};
use crate::materials::MaterialMap;
use crate::mesh::{cartesian, PolyMesh};
use crate::output::{OutputWriter, RunMeta};
use crate::space::{l2_project, DGSpace};
use crate::timeint::{Integrator, NewmarkParams, SolverKind};
use crate::verification::{
    error_norms, pressure_error_norms, recover_pressure, ErrorNorms, ErrorReport, ErrorSample,
    ManufacturedCase, PressureNorms, ERROR_QUADRATURE_BUMP,
};

/// Shared knobs for one study rung.
#[derive(Clone, Copy, Debug)]
pub struct StudySettings {
    pub penalties: PenaltyCoefficients,
    pub dt: f64,
    pub steps: usize,
    pub beta: f64,
    pub gamma: f64,
    pub solver: SolverKind,
}

impl StudySettings {
    pub fn new(dt: f64, steps: usize) -> Self {
        StudySettings {
            penalties: PenaltyCoefficients::default(),
            dt,
            steps,
            beta: 0.25,
            gamma: 0.5,
            solver: SolverKind::Direct,
        }
    }

    fn newmark(&self) -> NewmarkParams {
        NewmarkParams {
            dt: self.dt,
            beta: self.beta,
            gamma: self.gamma,
        }
    }
}

/// Integrates the manufactured problem on one mesh and returns the
/// final-time error norms, the pressure error and the scalar dof count.
pub fn manufactured_errors(
    mesh: &PolyMesh,
    degree: usize,
    case: &ManufacturedCase,
    settings: &StudySettings,
) -> Result<(ErrorNorms, PressureNorms, usize)> {
    // The manufactured medium is homogeneous: cover whatever tags the
    // mesh carries with the one coefficient set.
    let mut regions = BTreeMap::new();
    for cell in &mesh.cells {
        regions.insert(cell.region, case.materials);
    }
    let materials = MaterialMap { regions };
    materials.validate(mesh)?;

    let space = DGSpace::uniform(mesh, degree)?;
    let forms = assemble_forms(mesh, &space, &materials, &settings.penalties)?;
    let system = build_block_system(forms, case.materials.tau)?;
    let loads = LoadAssembler::new(mesh, &space, &materials, &settings.penalties)?;

    let (x0, y0) = case.prepared_initial_state(mesh, &space, &system, &loads)?;
    let p0 = l2_project(
        mesh,
        &space,
        |p| case.pressure(p, 0.0),
        ERROR_QUADRATURE_BUMP,
    )?;
    let f0 = loads.assemble(case, 0.0);
    let integrator = Integrator::for_system(&system, settings.newmark(), settings.solver)?;
    let mut state = integrator.initial_state(x0.clone(), y0, &f0)?;

    let mut f_prev = f0;
    for k in 0..settings.steps {
        let t_next = settings.dt * (k + 1) as f64;
        let f_next = loads.assemble(case, t_next);
        integrator.step(&mut state, &f_prev, &f_next)?;
        f_prev = f_next;
    }

    let t_final = settings.dt * settings.steps as f64;
    let exact = case.exact_fields(t_final);
    let norms = error_norms(mesh, &space, &materials, &settings.penalties, &state.x, &exact)?;
    let p_h = recover_pressure(mesh, &space, &materials, &state.x, &x0, Some(&p0))?;
    let pressure = pressure_error_norms(
        mesh,
        &space,
        &materials,
        &p_h,
        &|p| case.pressure(p, t_final),
        &|p| case.pressure_gradient(p, t_final),
    )?;
    Ok((norms, pressure, space.n_dofs))
}

/// Runs the study over a mesh ladder at fixed degree.
pub fn h_study(
    meshes: &[(String, PolyMesh)],
    degree: usize,
    case: &ManufacturedCase,
    settings: &StudySettings,
) -> Result<ErrorReport> {
    let mut report = ErrorReport::new(true);
    for (label, mesh) in meshes {
        let (norms, pressure, dofs) = manufactured_errors(mesh, degree, case, settings)
            .map_err(|e| Error::Solver(format!("rung {label}: {e}")))?;
        report.samples.push(ErrorSample {
            label: label.clone(),
            h: mesh.mesh_size(),
            degree,
            dofs,
            norms,
            pressure,
        });
    }
    Ok(report)
}

/// Runs the study over a degree ladder on one fixed mesh.
pub fn degree_study(
    mesh: &PolyMesh,
    degrees: &[usize],
    case: &ManufacturedCase,
    settings: &StudySettings,
) -> Result<ErrorReport> {
    let mut report = ErrorReport::new(false);
    for &degree in degrees {
        let label = format!("p{degree}");
        let (norms, pressure, dofs) = manufactured_errors(mesh, degree, case, settings)
            .map_err(|e| Error::Solver(format!("rung {label}: {e}")))?;
        report.samples.push(ErrorSample {
            label,
            h: mesh.mesh_size(),
            degree,
            dofs,
            norms,
            pressure,
        });
    }
    Ok(report)
}

/// A completed convergence run: the tabulated report plus the gate
/// verdict. An empty `failures` list means the observed rates pass.
#[derive(Debug)]
pub struct ConvergenceOutcome {
    pub report: ErrorReport,
    pub failures: Vec<String>,
    pub meta: RunMeta,
}

impl ConvergenceOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rate gate for mesh ladders: between the last two rungs, the dG rates
/// of the three solution fields must reach `degree - 0.25`. A vanished
/// error counts as passing. Degree ladders skip the gate; their check is
/// that errors decrease, reported in the table itself.
fn gate_failures(report: &ErrorReport, degree: usize) -> Vec<String> {
    let mut failures = Vec::new();
    if !report.refine_in_h || report.samples.len() < 2 {
        return failures;
    }
    let need = degree as f64 - 0.25;
    for (name, col) in [("dG_u", 1), ("dG_w", 3), ("dG_T", 5)] {
        let rates = report.column_rates(col);
        match rates.last().copied().flatten() {
            Some(rate) if rate < need => {
                failures.push(format!(
                    "{name} rate {rate:.2} on the last rung pair is below {need:.2}"
                ));
            }
            _ => {}
        }
    }
    failures
}

/// Runs the convergence mode of a config end to end: builds the ladder,
/// integrates every rung, writes `rates.csv` and `run.meta`, and applies
/// the rate gate.
pub fn run_convergence(cfg: &RunConfig) -> Result<ConvergenceOutcome> {
    if cfg.mode != RunMode::Convergence {
        return Err(Error::Config("config mode is not \"convergence\"".into()));
    }
    let warnings = cfg.validate()?;
    let conv = cfg
        .convergence
        .as_ref()
        .expect("validate guarantees the section");

    if cfg.materials.len() != 1 {
        return Err(Error::Config(
            "a manufactured study needs exactly one material".into(),
        ));
    }
    let region = cfg.materials.values().next().unwrap().resolve()?;
    let case = ManufacturedCase::new(region);

    let steps = cfg.time.step_count()?;
    let mut settings = StudySettings::new(cfg.time.dt, steps);
    settings.penalties = cfg.penalties.coefficients();
    settings.beta = cfg.time.beta;
    settings.gamma = cfg.time.gamma;

    let degree = cfg.space.degree;
    let mut meta = RunMeta {
        config_hash: cfg.hash(),
        version: crate::VERSION.into(),
        degree,
        steps,
        warnings,
        ..RunMeta::default()
    };

    let started = Instant::now();
    let report = if let Some(degrees) = &conv.degrees {
        let mesh = cfg.resolve_mesh()?;
        meta.n_cells = mesh.n_cells();
        degree_study(&mesh, degrees, &case, &settings)?
    } else {
        let meshes: Vec<(String, PolyMesh)> = if let Some(grids) = &conv.grids {
            grids
                .iter()
                .map(|&n| (format!("{n}x{n}"), cartesian(n, n, [0.0, 1.0], [0.0, 1.0])))
                .collect()
        } else {
            let paths = conv.meshes.as_ref().expect("validate checked the axis");
            let mut out = Vec::with_capacity(paths.len());
            for path in paths {
                let label = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                out.push((label, PolyMesh::load(path)?));
            }
            out
        };
        meta.n_cells = meshes.last().map(|(_, m)| m.n_cells()).unwrap_or(0);
        h_study(&meshes, degree, &case, &settings)?
    };
    meta.phases.push(("study".into(), started.elapsed().as_secs_f64()));
    meta.n_dofs = report.samples.last().map(|s| 5 * s.dofs).unwrap_or(0);

    let failures = gate_failures(&report, degree);

    let io_started = Instant::now();
    let writer = OutputWriter::create(&cfg.output.directory)?;
    writer.write_rates(&report)?;
    meta.phases.push(("output".into(), io_started.elapsed().as_secs_f64()));
    writer.write_meta(&meta)?;

    Ok(ConvergenceOutcome {
        report,
        failures,
        meta,
    })
}
