//! Interior-penalty discontinuous Galerkin solver for fully-dynamic linear
//! thermo-poroelasticity on general polygonal meshes.
//!
//! The discretization couples solid displacement `u`, filtration displacement
//! `w` and temperature `T` in a second-order-in-time system; pore pressure is
//! eliminated and recovered by post-processing. Discrete spaces are broken
//! polynomials of (possibly per-cell) degree on polygonal cells, with
//! interior-penalty face terms. Time stepping is implicit Newmark; when the
//! thermal relaxation time vanishes the temperature equation degenerates to
//! first order and is advanced by Crank–Nicolson coupled monolithically to the
//! Newmark update of the displacements.
//!
//! Module map:
//! - [`mesh`]: polygonal meshes, text format I/O, structured generators,
//!   sub-triangulation and shape-regularity diagnostics
//! - [`space`]: orthonormal modal bases, quadrature on cells and faces,
//!   projections and field evaluation
//! - [`materials`]: material parameter sets per region, derived quantities,
//!   validation
//! - [`assembly`]: bilinear forms, penalty functions, block system, load
//!   vectors (volume, weak Dirichlet data, point sources)
//! - [`timeint`]: Newmark and Newmark/Crank–Nicolson stepping, linear solver
//!   handles
//! - [`sources`]: source time histories and moment tensor point sources
//! - [`verification`]: dG/energy norms, manufactured solutions, pressure
//!   recovery, convergence rates
//! - [`config`] and [`driver`]: run configuration and the drivers behind the
//!   command-line interface

pub mod assembly;
pub mod config;
pub mod driver;
pub mod error;
pub mod geometry;
pub mod materials;
pub mod mesh;
pub mod output;
pub mod sampling;
pub mod sources;
pub mod space;
pub mod sparse;
pub mod timeint;
pub mod verification;

pub use error::Error;

/// Crate version string reported in run metadata and through the C ABI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
