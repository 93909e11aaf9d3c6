//! Broken polynomial spaces on polygonal meshes.
//!
//! Scalar fields store one coefficient block per cell. Vector fields use the
//! same scalar basis componentwise with the per-cell layout
//! `[x-component block | y-component block]`, so a vector field occupies
//! `2 * n_dofs` entries and cell blocks stay contiguous.

pub mod basis;
pub mod quadrature;

pub use basis::{local_dim, BasisTable, CellBasis};
pub use quadrature::{cell_rule, face_rule, gauss_legendre, QuadRule};

use crate::error::Result;
use crate::geometry::{Matrix2, Point2, Vector2};
use crate::mesh::PolyMesh;
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct DGSpace {
    pub degrees: Vec<usize>,
    /// Scalar coefficient offset of each cell.
    pub offsets: Vec<usize>,
    pub n_dofs: usize,
    pub bases: Vec<CellBasis>,
}

impl DGSpace {
    pub fn uniform(mesh: &PolyMesh, degree: usize) -> Result<Self> {
        Self::with_degrees(mesh, vec![degree; mesh.n_cells()])
    }

    /// Build a space with per-cell polynomial degrees.
    pub fn with_degrees(mesh: &PolyMesh, degrees: Vec<usize>) -> Result<Self> {
        assert_eq!(degrees.len(), mesh.n_cells());
        let mut offsets = Vec::with_capacity(degrees.len());
        let mut n_dofs = 0;
        let mut bases = Vec::with_capacity(degrees.len());
        for (cell, &deg) in degrees.iter().enumerate() {
            offsets.push(n_dofs);
            n_dofs += local_dim(deg);
            let rule = cell_rule(mesh, cell, 2 * deg + 2)?;
            bases.push(CellBasis::new(deg, mesh.geometry(cell).bbox, &rule));
        }
        Ok(DGSpace {
            degrees,
            offsets,
            n_dofs,
            bases,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.degrees.len()
    }

    pub fn n_local(&self, cell: usize) -> usize {
        local_dim(self.degrees[cell])
    }

    pub fn offset(&self, cell: usize) -> usize {
        self.offsets[cell]
    }

    /// Offset of a cell's block in a vector-valued coefficient array.
    pub fn vec_offset(&self, cell: usize) -> usize {
        2 * self.offsets[cell]
    }

    pub fn n_vec_dofs(&self) -> usize {
        2 * self.n_dofs
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn tabulate(&self, cell: usize, points: &[Point2]) -> BasisTable {
        self.bases[cell].tabulate(points)
    }

    pub fn scalar_value(&self, coeffs: &[f64], cell: usize, p: Point2) -> f64 {
        let m = self.n_local(cell);
        let o = self.offset(cell);
        let t = self.bases[cell].tabulate(std::slice::from_ref(&p));
        (0..m).map(|i| coeffs[o + i] * t.val[(0, i)]).sum()
    }

    pub fn scalar_gradient(&self, coeffs: &[f64], cell: usize, p: Point2) -> Vector2 {
        let m = self.n_local(cell);
        let o = self.offset(cell);
        let t = self.bases[cell].tabulate(std::slice::from_ref(&p));
        let mut g = Vector2::zeros();
        for i in 0..m {
            g.x += coeffs[o + i] * t.dx[(0, i)];
            g.y += coeffs[o + i] * t.dy[(0, i)];
        }
        g
    }

    pub fn vector_value(&self, coeffs: &[f64], cell: usize, p: Point2) -> Vector2 {
        let m = self.n_local(cell);
        let o = self.vec_offset(cell);
        let t = self.bases[cell].tabulate(std::slice::from_ref(&p));
        let mut v = Vector2::zeros();
        for i in 0..m {
            v.x += coeffs[o + i] * t.val[(0, i)];
            v.y += coeffs[o + m + i] * t.val[(0, i)];
        }
        v
    }

    /// Jacobian of a vector field; entry (i, j) is d u_i / d x_j.
    pub fn vector_gradient(&self, coeffs: &[f64], cell: usize, p: Point2) -> Matrix2 {
        let m = self.n_local(cell);
        let o = self.vec_offset(cell);
        let t = self.bases[cell].tabulate(std::slice::from_ref(&p));
        let mut j = Matrix2::zeros();
        for i in 0..m {
            j[(0, 0)] += coeffs[o + i] * t.dx[(0, i)];
            j[(0, 1)] += coeffs[o + i] * t.dy[(0, i)];
            j[(1, 0)] += coeffs[o + m + i] * t.dx[(0, i)];
            j[(1, 1)] += coeffs[o + m + i] * t.dy[(0, i)];
        }
        j
    }
}

/// L2 projection of a scalar function into the broken space.
pub fn l2_project(
    mesh: &PolyMesh,
    space: &DGSpace,
    f: impl Fn(Point2) -> f64,
    order_bump: usize,
) -> Result<Vec<f64>> {
    let mut coeffs = vec![0.0; space.n_dofs];
    for cell in 0..space.n_cells() {
        let deg = space.degrees[cell];
        let rule = cell_rule(mesh, cell, 2 * deg + 2 + order_bump)?;
        let t = space.tabulate(cell, &rule.points);
        let m = space.n_local(cell);
        let o = space.offset(cell);
        let local = project_local(&rule, &t, m, |q| f(rule.points[q]));
        coeffs[o..o + m].copy_from_slice(local.as_slice());
    }
    Ok(coeffs)
}

/// L2 projection of a vector function; output uses the vector layout.
pub fn l2_project_vector(
    mesh: &PolyMesh,
    space: &DGSpace,
    f: impl Fn(Point2) -> Vector2,
    order_bump: usize,
) -> Result<Vec<f64>> {
    let mut coeffs = vec![0.0; space.n_vec_dofs()];
    for cell in 0..space.n_cells() {
        let deg = space.degrees[cell];
        let rule = cell_rule(mesh, cell, 2 * deg + 2 + order_bump)?;
        let t = space.tabulate(cell, &rule.points);
        let m = space.n_local(cell);
        let o = space.vec_offset(cell);
        let fx = project_local(&rule, &t, m, |q| f(rule.points[q]).x);
        let fy = project_local(&rule, &t, m, |q| f(rule.points[q]).y);
        coeffs[o..o + m].copy_from_slice(fx.as_slice());
        coeffs[o + m..o + 2 * m].copy_from_slice(fy.as_slice());
    }
    Ok(coeffs)
}

/// Solve the local mass system for one component on one cell. The basis is
/// orthonormal so the mass matrix is the identity up to quadrature error; the
/// explicit solve keeps projections exact also for elevated orders.
fn project_local(
    rule: &QuadRule,
    t: &BasisTable,
    m: usize,
    f: impl Fn(usize) -> f64,
) -> nalgebra::DVector<f64> {
    let mut mass = DMatrix::zeros(m, m);
    let mut rhs = nalgebra::DVector::zeros(m);
    for q in 0..rule.len() {
        let w = rule.weights[q];
        let fv = f(q);
        for i in 0..m {
            rhs[i] += w * fv * t.val[(q, i)];
            for j in 0..=i {
                mass[(i, j)] += w * t.val[(q, i)] * t.val[(q, j)];
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            mass[(i, j)] = mass[(j, i)];
        }
    }
    mass.cholesky()
        .expect("local mass matrix must be SPD")
        .solve(&rhs)
}
