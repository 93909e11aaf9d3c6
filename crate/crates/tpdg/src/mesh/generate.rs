//! Structured mesh generators used by tests and built-in configurations.

use super::{Cell, PolyMesh};
use crate::geometry::Point2;

/// Uniform nx-by-ny quadrilateral grid on [x0,x1] x [y0,y1].
pub fn cartesian(nx: usize, ny: usize, x: [f64; 2], y: [f64; 2]) -> PolyMesh {
    assert!(nx > 0 && ny > 0);
    let dx = (x[1] - x[0]) / nx as f64;
    let dy = (y[1] - y[0]) / ny as f64;
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            vertices.push(Point2::new(x[0] + i as f64 * dx, y[0] + j as f64 * dy));
        }
    }
    let mut cells = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            cells.push(Cell {
                vertices: vec![vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)],
                region: 0,
            });
        }
    }
    PolyMesh::new(vertices, cells).expect("structured grid is always valid")
}

/// Running-bond brick pattern: odd rows are shifted by half a brick and edge
/// midpoints are inserted so that faces match vertex-index-wise. Interior
/// cells are hexagons, which exercises genuinely polygonal code paths.
pub fn brick(nx: usize, ny: usize, x: [f64; 2], y: [f64; 2]) -> PolyMesh {
    assert!(nx > 0 && ny > 0);
    let half = (x[1] - x[0]) / (2 * nx) as f64;
    let dy = (y[1] - y[0]) / ny as f64;
    let cols = 2 * nx + 1;
    let vid = |k: usize, j: usize| j * cols + k;
    let mut vertices = Vec::with_capacity(cols * (ny + 1));
    for j in 0..=ny {
        for k in 0..cols {
            vertices.push(Point2::new(x[0] + k as f64 * half, y[0] + j as f64 * dy));
        }
    }
    let mut cells = Vec::new();
    for j in 0..ny {
        // half-column spans of the bricks in this row
        let spans: Vec<(usize, usize)> = if j % 2 == 0 {
            (0..nx).map(|i| (2 * i, 2 * i + 2)).collect()
        } else {
            let mut s = vec![(0, 1)];
            s.extend((0..nx - 1).map(|i| (2 * i + 1, 2 * i + 3)));
            s.push((2 * nx - 1, 2 * nx));
            s
        };
        for (a, b) in spans {
            let mut loop_idx = Vec::with_capacity(2 * (b - a) + 2);
            for k in a..=b {
                loop_idx.push(vid(k, j));
            }
            for k in (a..=b).rev() {
                loop_idx.push(vid(k, j + 1));
            }
            cells.push(Cell {
                vertices: loop_idx,
                region: 0,
            });
        }
    }
    PolyMesh::new(vertices, cells).expect("brick grid is always valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartesian_covers_domain() {
        let m = cartesian(4, 3, [0.0, 2.0], [-1.0, 1.0]);
        assert_eq!(m.n_cells(), 12);
        assert!((m.total_area() - 4.0).abs() < 1e-13);
        assert_eq!(m.boundary_faces().count(), 2 * 4 + 2 * 3);
        assert!((m.mesh_size() - (0.5f64.powi(2) + (2.0 / 3.0f64).powi(2)).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn brick_covers_domain_with_hexagons() {
        let m = brick(4, 4, [0.0, 1.0], [0.0, 1.0]);
        // even rows: 4 bricks, odd rows: 5
        assert_eq!(m.n_cells(), 2 * 4 + 2 * 5);
        assert!((m.total_area() - 1.0).abs() < 1e-13);
        let hexes = m.cells.iter().filter(|c| c.vertices.len() == 6).count();
        assert!(hexes > 0);
        // every face is matched by index pairs, so interior faces have two cells
        for f in &m.faces {
            if !f.is_boundary() {
                assert_ne!(f.owner, f.neighbor.unwrap());
            }
        }
    }
}
