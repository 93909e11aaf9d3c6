//! Small 2D geometric primitives shared by the mesh and quadrature layers.

pub type Point2 = nalgebra::Point2<f64>;
pub type Vector2 = nalgebra::Vector2<f64>;
pub type Matrix2 = nalgebra::Matrix2<f64>;

/// Twice the signed area of triangle (a, b, c); positive for counter-clockwise.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Signed area of a polygon given by its vertex loop (shoelace formula).
pub fn polygon_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    0.5 * s
}

/// Area centroid of a simple polygon.
pub fn polygon_centroid(pts: &[Point2]) -> Point2 {
    let n = pts.len();
    let mut cx = 0.0;
    let mut cy = 0.0;
    let mut s = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        let cross = a.x * b.y - b.x * a.y;
        s += cross;
        cx += (a.x + b.x) * cross;
        cy += (a.y + b.y) * cross;
    }
    let s = 0.5 * s;
    Point2::new(cx / (6.0 * s), cy / (6.0 * s))
}

/// Largest pairwise vertex distance; used as the element diameter.
pub fn polygon_diameter(pts: &[Point2]) -> f64 {
    let mut h: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            h = h.max((pts[i] - pts[j]).norm());
        }
    }
    h
}

/// Axis-aligned bounding box as (lower corner, upper corner).
pub fn polygon_bbox(pts: &[Point2]) -> (Point2, Point2) {
    let mut lo = pts[0];
    let mut hi = pts[0];
    for p in &pts[1..] {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

/// Point-in-polygon test, boundary inclusive up to `tol` in absolute distance.
pub fn polygon_contains(pts: &[Point2], p: Point2, tol: f64) -> bool {
    let n = pts.len();
    // Near-edge points count as inside so that samples on shared faces are
    // claimed by every adjacent cell (callers break ties by cell index).
    for i in 0..n {
        if point_segment_distance(p, pts[i], pts[(i + 1) % n]) <= tol {
            return true;
        }
    }
    let mut winding = 0i32;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient2d(a, b, p) > 0.0 {
                winding += 1;
            }
        } else if b.y <= p.y && orient2d(a, b, p) < 0.0 {
            winding -= 1;
        }
    }
    winding != 0
}

/// Distance from `p` to segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Proper intersection test for open segments (shared endpoints do not count).
pub fn segments_intersect(a1: Point2, a2: Point2, b1: Point2, b2: Point2) -> bool {
    let d1 = orient2d(b1, b2, a1);
    let d2 = orient2d(b1, b2, a2);
    let d3 = orient2d(a1, a2, b1);
    let d4 = orient2d(a1, a2, b2);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}
