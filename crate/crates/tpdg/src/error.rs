//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mesh format error: {0}")]
    MeshFormat(String),

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("invalid materials: {0}")]
    InvalidMaterials(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("linear solver failure: {0}")]
    Solver(String),

    #[error("point {0:?} is outside the mesh")]
    OutsideMesh([f64; 2]),

    #[error("quadrature order {0} exceeds the supported maximum {1}")]
    QuadratureOrder(usize, usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
