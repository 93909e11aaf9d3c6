//! Quadrature on segments, triangles and polygonal cells.
//!
//! Polygon rules are assembled by mapping a collapsed tensor-product
//! Gauss-Legendre rule onto each triangle of the cell's sub-triangulation.
//! A rule requested at `order` integrates bivariate polynomials of total
//! degree <= order exactly. Orders up to [`MAX_ORDER`] are supported, which
//! comfortably covers the 2l+2 load assembly and 2l+4 error quadrature needed
//! for degrees l <= 6.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::mesh::{sub_triangulate, PolyMesh};

/// Largest supported quadrature order.
pub const MAX_ORDER: usize = 40;

/// Points and weights in physical coordinates; weights sum to the measure of
/// the integration domain.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub points: Vec<Point2>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(Point2) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], exact through degree 2n-1.
/// Computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Chebyshev-like initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Quadrature along the segment [a, b], exact for univariate polynomials of
/// degree <= order along the segment parameter.
pub fn face_rule(a: Point2, b: Point2, order: usize) -> Result<QuadRule> {
    check_order(order)?;
    let n = order / 2 + 1;
    let (nodes, weights) = gauss_legendre(n);
    let mid = Point2::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
    let half = (b - a) * 0.5;
    let jac = half.norm();
    Ok(QuadRule {
        points: nodes.iter().map(|&t| mid + half * t).collect(),
        weights: weights.iter().map(|&w| w * jac).collect(),
    })
}

/// Rule on one triangle via the collapsed (Duffy) map from the unit square.
/// The map introduces one extra polynomial degree, hence the n below.
pub fn triangle_rule(tri: &[Point2; 3], order: usize) -> Result<QuadRule> {
    check_order(order)?;
    let n = (order + 2).div_ceil(2);
    let (nodes, weights) = gauss_legendre(n);
    // map [-1,1] -> [0,1]
    let to01 = |t: f64| 0.5 * (t + 1.0);
    let (a, b, c) = (tri[0], tri[1], tri[2]);
    let e1 = b - a;
    let e2 = c - a;
    let det = e1.x * e2.y - e1.y * e2.x; // twice the signed triangle area
    let mut points = Vec::with_capacity(n * n);
    let mut ws = Vec::with_capacity(n * n);
    for (iu, &tu) in nodes.iter().enumerate() {
        let u = to01(tu);
        for (iv, &tv) in nodes.iter().enumerate() {
            let v = to01(tv);
            // reference coordinates on the unit triangle
            let r = u;
            let s = v * (1.0 - u);
            points.push(a + e1 * r + e2 * s);
            // 0.25: the two [-1,1] -> [0,1] reparametrizations
            ws.push(0.25 * weights[iu] * weights[iv] * (1.0 - u) * det);
        }
    }
    Ok(QuadRule {
        points,
        weights: ws,
    })
}

/// Rule over a polygonal cell, composed from its sub-triangulation.
pub fn cell_rule(mesh: &PolyMesh, cell: usize, order: usize) -> Result<QuadRule> {
    check_order(order)?;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for tri in sub_triangulate(mesh, cell) {
        let r = triangle_rule(&tri, order)?;
        points.extend(r.points);
        weights.extend(r.weights);
    }
    Ok(QuadRule { points, weights })
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::QuadratureOrder(order, MAX_ORDER));
    }
    Ok(())
}
