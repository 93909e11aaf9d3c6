//! Sub-triangulation of polygonal cells for quadrature construction.

use super::PolyMesh;
use crate::geometry::{orient2d, Point2};

/// Triangulate a (possibly non-convex) simple polygon by ear clipping.
/// Triangle areas sum to the polygon area; triangles never fold outside.
pub fn triangulate_polygon(pts: &[Point2]) -> Vec<[Point2; 3]> {
    let n = pts.len();
    assert!(n >= 3);
    if n == 3 {
        return vec![[pts[0], pts[1], pts[2]]];
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut tris = Vec::with_capacity(n - 2);
    // scale-aware tolerance for collinear ears
    let diam = crate::geometry::polygon_diameter(pts);
    let eps = 1e-12 * diam * diam;

    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for i in 0..m {
            let (ia, ib, ic) = (idx[(i + m - 1) % m], idx[i], idx[(i + 1) % m]);
            let (a, b, c) = (pts[ia], pts[ib], pts[ic]);
            if orient2d(a, b, c) <= eps {
                continue; // reflex or degenerate corner
            }
            // ear is valid if no other remaining vertex lies inside it
            let mut blocked = false;
            for &j in &idx {
                if j == ia || j == ib || j == ic {
                    continue;
                }
                if point_in_triangle(pts[j], a, b, c, eps) {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                tris.push([a, b, c]);
                idx.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            // Numerically degenerate input; fall back to a centroid fan so the
            // caller still gets a cover with the right total area.
            let remaining: Vec<Point2> = idx.iter().map(|&i| pts[i]).collect();
            let c = crate::geometry::polygon_centroid(&remaining);
            let k = remaining.len();
            for i in 0..k {
                tris.push([remaining[i], remaining[(i + 1) % k], c]);
            }
            return tris;
        }
    }
    tris.push([pts[idx[0]], pts[idx[1]], pts[idx[2]]]);
    tris
}

/// Sub-triangulate one mesh cell.
pub fn sub_triangulate(mesh: &PolyMesh, cell: usize) -> Vec<[Point2; 3]> {
    triangulate_polygon(&mesh.cell_points(cell))
}

fn point_in_triangle(p: Point2, a: Point2, b: Point2, c: Point2, eps: f64) -> bool {
    orient2d(a, b, p) >= -eps && orient2d(b, c, p) >= -eps && orient2d(c, a, p) >= -eps
}
