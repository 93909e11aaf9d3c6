//! Per-cell modal bases.
//!
//! Each cell carries monomials scaled to its bounding box, orthonormalized
//! against the cell's own quadrature by modified Gram-Schmidt (two passes).
//! The resulting local mass matrix is the identity to quadrature precision
//! regardless of cell shape or degree, which keeps local problems well
//! conditioned on stretched or small cells.

use crate::geometry::{Point2, Vector2};
use crate::space::quadrature::QuadRule;
use nalgebra::DMatrix;

/// Number of 2D monomials of total degree <= l.
pub fn local_dim(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// Exponent pairs (a, b) of the monomial ordering, grouped by total degree.
pub fn monomial_exponents(degree: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::with_capacity(local_dim(degree));
    for d in 0..=degree {
        for b in 0..=d {
            e.push((d - b, b));
        }
    }
    e
}

#[derive(Debug, Clone)]
pub struct CellBasis {
    pub degree: usize,
    pub dim: usize,
    center: Point2,
    half: Vector2,
    exponents: Vec<(usize, usize)>,
    /// Row i holds the monomial coefficients of orthonormal function i.
    coeff: DMatrix<f64>,
}

/// Basis values and first derivatives tabulated at a set of points.
/// Layout: (point, basis function).
#[derive(Debug, Clone)]
pub struct BasisTable {
    pub val: DMatrix<f64>,
    pub dx: DMatrix<f64>,
    pub dy: DMatrix<f64>,
}

impl CellBasis {
    /// Orthonormalize the scaled monomials against `rule`, which must
    /// integrate degree-2l products exactly.
    pub fn new(degree: usize, bbox: (Point2, Point2), rule: &QuadRule) -> Self {
        let dim = local_dim(degree);
        let center = Point2::new(0.5 * (bbox.0.x + bbox.1.x), 0.5 * (bbox.0.y + bbox.1.y));
        let half = Vector2::new(
            (0.5 * (bbox.1.x - bbox.0.x)).max(f64::MIN_POSITIVE),
            (0.5 * (bbox.1.y - bbox.0.y)).max(f64::MIN_POSITIVE),
        );
        let exponents = monomial_exponents(degree);
        let nq = rule.len();
        assert!(nq >= dim, "quadrature must resolve the basis");

        // monomial samples, scaled by sqrt(weight) so plain dot products are
        // the quadrature inner products
        let mut sample = DMatrix::zeros(nq, dim);
        for (q, (&p, &w)) in rule.points.iter().zip(&rule.weights).enumerate() {
            let sw = w.sqrt();
            let xi = (p.x - center.x) / half.x;
            let eta = (p.y - center.y) / half.y;
            for (j, &(a, b)) in exponents.iter().enumerate() {
                sample[(q, j)] = sw * xi.powi(a as i32) * eta.powi(b as i32);
            }
        }

        let mut coeff = DMatrix::<f64>::identity(dim, dim);
        let mut basis_samples = sample.clone();
        for i in 0..dim {
            // two Gram-Schmidt passes for orthogonality at high degree
            for _ in 0..2 {
                for j in 0..i {
                    let r = basis_samples.column(i).dot(&basis_samples.column(j));
                    let cj = coeff.row(j).into_owned();
                    let mut ci = coeff.row_mut(i);
                    ci -= cj * r;
                    let sj = basis_samples.column(j).into_owned();
                    let mut si = basis_samples.column_mut(i);
                    si -= sj * r;
                }
            }
            let norm = basis_samples.column(i).norm();
            assert!(norm > 1e-300, "degenerate cell quadrature");
            coeff.row_mut(i).scale_mut(1.0 / norm);
            basis_samples.column_mut(i).scale_mut(1.0 / norm);
        }

        CellBasis {
            degree,
            dim,
            center,
            half,
            exponents,
            coeff,
        }
    }

    /// Tabulate values and gradients at arbitrary physical points.
    pub fn tabulate(&self, points: &[Point2]) -> BasisTable {
        let nq = points.len();
        let dim = self.dim;
        let mut mono = DMatrix::zeros(nq, dim);
        let mut mono_dx = DMatrix::zeros(nq, dim);
        let mut mono_dy = DMatrix::zeros(nq, dim);
        for (q, &p) in points.iter().enumerate() {
            let xi = (p.x - self.center.x) / self.half.x;
            let eta = (p.y - self.center.y) / self.half.y;
            for (j, &(a, b)) in self.exponents.iter().enumerate() {
                let xa = xi.powi(a as i32);
                let yb = eta.powi(b as i32);
                mono[(q, j)] = xa * yb;
                mono_dx[(q, j)] = if a == 0 {
                    0.0
                } else {
                    a as f64 / self.half.x * xi.powi(a as i32 - 1) * yb
                };
                mono_dy[(q, j)] = if b == 0 {
                    0.0
                } else {
                    b as f64 / self.half.y * xa * eta.powi(b as i32 - 1)
                };
            }
        }
        let ct = self.coeff.transpose();
        BasisTable {
            val: &mono * &ct,
            dx: &mono_dx * &ct,
            dy: &mono_dy * &ct,
        }
    }

    /// Value/gradient of one basis function at one point.
    pub fn eval_one(&self, i: usize, p: Point2) -> (f64, Vector2) {
        let t = self.tabulate(std::slice::from_ref(&p));
        (t.val[(0, i)], Vector2::new(t.dx[(0, i)], t.dy[(0, i)]))
    }
}
