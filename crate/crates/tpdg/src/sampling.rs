//! Point sampling of discrete fields.
//!
//! Receivers and snapshot rasters both reduce to the same operation: find
//! the cell that owns a point, then evaluate the broken polynomial there.
//! A [`ProbeSet`] performs the point location once and caches the owning
//! cells, so a time loop pays only for basis evaluation. Points on a cell
//! interface belong to the lowest-indexed containing cell, the same rule
//! point sources use, which keeps sampling deterministic.
//!
//! The observables bundled in [`Observables`] are the ones every output
//! consumer wants: solid velocity magnitude and vertical component,
//! vertical filtration rate, and temperature. The full velocity and
//! filtration-rate vectors ride along for snapshot comparisons.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::mesh::PolyMesh;
use crate::space::DGSpace;

/// Field values at one point: solid velocity `v`, filtration rate `q` and
/// temperature, with the derived magnitude and vertical components.
#[derive(Clone, Copy, Debug, Default)]
pub struct Observables {
    pub vmag: f64,
    pub vx: f64,
    pub vy: f64,
    pub qx: f64,
    pub qy: f64,
    pub temperature: f64,
}

/// A fixed list of sample points with their owning cells resolved.
#[derive(Clone, Debug)]
pub struct ProbeSet {
    points: Vec<Point2>,
    cells: Vec<usize>,
}

impl ProbeSet {
    /// Locates every point, failing on the first one outside the mesh.
    pub fn bind(mesh: &PolyMesh, points: &[Point2]) -> Result<Self> {
        let mut cells = Vec::with_capacity(points.len());
        for p in points {
            let cell = mesh
                .locate(*p)
                .ok_or(Error::OutsideMesh([p.x, p.y]))?;
            cells.push(cell);
        }
        Ok(ProbeSet {
            points: points.to_vec(),
            cells,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Samples the observables at every probe. `x` and `y` are the state
    /// and rate vectors over the `[U; W; T]` block layout: velocity and
    /// filtration rate come from the rate vector, temperature from the
    /// state.
    pub fn sample(&self, space: &DGSpace, x: &[f64], y: &[f64]) -> Vec<Observables> {
        let n = space.n_dofs;
        assert_eq!(x.len(), 5 * n, "state vector must hold [U; W; T]");
        assert_eq!(y.len(), 5 * n, "rate vector must hold [U; W; T]");
        let (y_u, rest) = y.split_at(2 * n);
        let (y_w, _) = rest.split_at(2 * n);
        let x_t = &x[4 * n..];
        self.points
            .iter()
            .zip(&self.cells)
            .map(|(&p, &cell)| {
                let v = space.vector_value(y_u, cell, p);
                let q = space.vector_value(y_w, cell, p);
                let t = space.scalar_value(x_t, cell, p);
                Observables {
                    vmag: v.norm(),
                    vx: v.x,
                    vy: v.y,
                    qx: q.x,
                    qy: q.y,
                    temperature: t,
                }
            })
            .collect()
    }
}

/// Cell-center points of an `nx` by `ny` raster over the mesh bounding
/// box, row-major with x fastest and y increasing from the bottom.
/// Centers rather than corners keep the points strictly inside a
/// rectangular domain.
pub fn raster_points(mesh: &PolyMesh, nx: usize, ny: usize) -> Vec<Point2> {
    let (lo, hi) = mesh_bbox(mesh);
    let dx = (hi.x - lo.x) / nx as f64;
    let dy = (hi.y - lo.y) / ny as f64;
    let mut points = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        let y = lo.y + (j as f64 + 0.5) * dy;
        for i in 0..nx {
            let x = lo.x + (i as f64 + 0.5) * dx;
            points.push(Point2::new(x, y));
        }
    }
    points
}

/// Bounding box over all mesh vertices.
pub fn mesh_bbox(mesh: &PolyMesh) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in &mesh.vertices {
        lo.x = lo.x.min(v.x);
        lo.y = lo.y.min(v.y);
        hi.x = hi.x.max(v.x);
        hi.y = hi.y.max(v.y);
    }
    (lo, hi)
}

/// Evaluates the observables at every cell centroid, for cell-wise
/// snapshot output on the mesh itself.
pub fn centroid_observables(
    mesh: &PolyMesh,
    space: &DGSpace,
    x: &[f64],
    y: &[f64],
) -> Vec<Observables> {
    let n = space.n_dofs;
    assert_eq!(x.len(), 5 * n);
    assert_eq!(y.len(), 5 * n);
    let (y_u, rest) = y.split_at(2 * n);
    let (y_w, _) = rest.split_at(2 * n);
    let x_t = &x[4 * n..];
    (0..mesh.n_cells())
        .map(|cell| {
            let p = mesh.geometry(cell).centroid;
            let v = space.vector_value(y_u, cell, p);
            let q = space.vector_value(y_w, cell, p);
            let t = space.scalar_value(x_t, cell, p);
            Observables {
                vmag: v.norm(),
                vx: v.x,
                vy: v.y,
                qx: q.x,
                qy: q.y,
                temperature: t,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vector2;
    use crate::mesh::cartesian;
    use crate::space::{l2_project, l2_project_vector, DGSpace};

    /// Builds [U; W; T] vectors holding prescribed affine fields, which a
    /// degree-1 space reproduces exactly.
    fn affine_state(mesh: &PolyMesh, space: &DGSpace) -> (Vec<f64>, Vec<f64>) {
        let zero2 = |_: Point2| Vector2::zeros();
        let u = l2_project_vector(mesh, space, zero2, 0).unwrap();
        let w = l2_project_vector(mesh, space, zero2, 0).unwrap();
        let t = l2_project(mesh, space, |p| 3.0 * p.x - p.y + 0.5, 0).unwrap();
        let mut x = Vec::new();
        x.extend_from_slice(&u);
        x.extend_from_slice(&w);
        x.extend_from_slice(&t);

        let v = l2_project_vector(mesh, space, |p| Vector2::new(p.x + 2.0 * p.y, -p.y), 0).unwrap();
        let q = l2_project_vector(mesh, space, |p| Vector2::new(0.25, p.x - p.y), 0).unwrap();
        let tdot = l2_project(mesh, space, |_| 0.0, 0).unwrap();
        let mut y = Vec::new();
        y.extend_from_slice(&v);
        y.extend_from_slice(&q);
        y.extend_from_slice(&tdot);
        (x, y)
    }

    #[test]
    fn affine_fields_are_sampled_exactly() {
        let mesh = cartesian(3, 3, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let (x, y) = affine_state(&mesh, &space);
        let pts = [Point2::new(0.21, 0.37), Point2::new(0.88, 0.55)];
        let probes = ProbeSet::bind(&mesh, &pts).unwrap();
        let obs = probes.sample(&space, &x, &y);
        for (p, o) in pts.iter().zip(&obs) {
            let v = Vector2::new(p.x + 2.0 * p.y, -p.y);
            assert!((o.vx - v.x).abs() < 1e-12);
            assert!((o.vy - v.y).abs() < 1e-12);
            assert!((o.vmag - v.norm()).abs() < 1e-12);
            assert!((o.qx - 0.25).abs() < 1e-12);
            assert!((o.qy - (p.x - p.y)).abs() < 1e-12);
            assert!((o.temperature - (3.0 * p.x - p.y + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn outside_point_is_rejected_with_its_coordinates() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let err = ProbeSet::bind(&mesh, &[Point2::new(1.5, 0.5)]).unwrap_err();
        match err {
            Error::OutsideMesh(p) => assert_eq!(p, [1.5, 0.5]),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn interface_points_go_to_the_lowest_cell_index() {
        let mesh = cartesian(2, 1, [0.0, 1.0], [0.0, 1.0]);
        let probes = ProbeSet::bind(&mesh, &[Point2::new(0.5, 0.25)]).unwrap();
        assert_eq!(probes.cells(), &[0]);
    }

    #[test]
    fn raster_points_sit_at_cell_centers() {
        let mesh = cartesian(3, 3, [0.0, 2.0], [0.0, 4.0]);
        let pts = raster_points(&mesh, 2, 2);
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0], Point2::new(0.5, 1.0));
        assert_eq!(pts[1], Point2::new(1.5, 1.0));
        assert_eq!(pts[2], Point2::new(0.5, 3.0));
        assert_eq!(pts[3], Point2::new(1.5, 3.0));
        // Every raster point is inside the mesh.
        assert!(ProbeSet::bind(&mesh, &pts).is_ok());
    }

    #[test]
    fn centroid_observables_cover_every_cell() {
        let mesh = cartesian(3, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let (x, y) = affine_state(&mesh, &space);
        let obs = centroid_observables(&mesh, &space, &x, &y);
        assert_eq!(obs.len(), mesh.n_cells());
        for (cell, o) in obs.iter().enumerate() {
            let c = mesh.geometry(cell).centroid;
            assert!((o.temperature - (3.0 * c.x - c.y + 0.5)).abs() < 1e-12);
        }
    }
}
