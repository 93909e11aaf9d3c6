//! Polygonal meshes: connectivity, per-cell geometry, file I/O, generators.
//!
//! A mesh is a collection of simple polygonal cells given as counter-clockwise
//! vertex loops. Faces (straight edges shared by at most two cells) are
//! derived during construction together with outward normals and the cached
//! per-cell geometry used everywhere else (area, centroid, diameter, bounding
//! box). Construction validates orientation, simplicity, and manifoldness and
//! refuses meshes that fail any of these.

mod format;
mod generate;
mod regularity;
mod triangulate;

pub use generate::{brick, cartesian};
pub use regularity::{regularity_report, RegularityReport};
pub use triangulate::sub_triangulate;

use crate::error::{Error, Result};
use crate::geometry::{self, Point2, Vector2};
use std::collections::HashMap;
use std::path::Path;

/// A polygonal cell: CCW vertex loop plus a material region tag.
#[derive(Debug, Clone)]
pub struct Cell {
    pub vertices: Vec<usize>,
    pub region: i32,
}

/// A mesh face (edge). `owner` is the cell whose CCW traversal produced the
/// stored endpoint order; `normal` points out of the owner.
#[derive(Debug, Clone)]
pub struct Face {
    pub v: [usize; 2],
    pub owner: usize,
    pub neighbor: Option<usize>,
    pub normal: Vector2,
    pub length: f64,
    pub midpoint: Point2,
}

impl Face {
    pub fn is_boundary(&self) -> bool {
        self.neighbor.is_none()
    }
}

/// Cached per-cell geometry.
#[derive(Debug, Clone)]
pub struct CellGeometry {
    pub area: f64,
    pub centroid: Point2,
    /// Element diameter: largest pairwise vertex distance.
    pub diameter: f64,
    pub bbox: (Point2, Point2),
}

#[derive(Debug, Clone)]
pub struct PolyMesh {
    pub vertices: Vec<Point2>,
    pub cells: Vec<Cell>,
    pub faces: Vec<Face>,
    /// Face indices per cell, in the order of the cell's vertex loop.
    pub cell_faces: Vec<Vec<usize>>,
    geometry: Vec<CellGeometry>,
}

impl PolyMesh {
    /// Build a mesh from vertex coordinates and cell loops, deriving faces and
    /// validating orientation, simplicity and manifoldness.
    pub fn new(vertices: Vec<Point2>, cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidMesh("mesh has no cells".into()));
        }
        for (ci, cell) in cells.iter().enumerate() {
            if cell.vertices.len() < 3 {
                return Err(Error::InvalidMesh(format!(
                    "cell {ci} has fewer than 3 vertices"
                )));
            }
            for &v in &cell.vertices {
                if v >= vertices.len() {
                    return Err(Error::InvalidMesh(format!(
                        "cell {ci} references vertex {v} out of range"
                    )));
                }
            }
            let mut sorted = cell.vertices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != cell.vertices.len() {
                return Err(Error::InvalidMesh(format!(
                    "cell {ci} repeats a vertex in its loop"
                )));
            }
        }

        let geometry: Vec<CellGeometry> = cells
            .iter()
            .map(|c| {
                let pts: Vec<Point2> = c.vertices.iter().map(|&v| vertices[v]).collect();
                CellGeometry {
                    area: geometry::polygon_area(&pts),
                    centroid: geometry::polygon_centroid(&pts),
                    diameter: geometry::polygon_diameter(&pts),
                    bbox: geometry::polygon_bbox(&pts),
                }
            })
            .collect();

        for (ci, g) in geometry.iter().enumerate() {
            if !(g.area > 0.0) {
                return Err(Error::InvalidMesh(format!(
                    "cell {ci} is not counter-clockwise or degenerate (signed area {})",
                    g.area
                )));
            }
        }

        for (ci, cell) in cells.iter().enumerate() {
            if !is_simple_polygon(&cell.vertices, &vertices) {
                return Err(Error::InvalidMesh(format!("cell {ci} self-intersects")));
            }
        }

        // Face extraction: undirected edge -> (owner, neighbor).
        let mut edge_map: HashMap<(usize, usize), (usize, usize, usize)> = HashMap::new();
        // value = (face index, owner, count); build face list in first-seen order
        let mut faces: Vec<Face> = Vec::new();
        let mut cell_faces: Vec<Vec<usize>> = vec![Vec::new(); cells.len()];
        for (ci, cell) in cells.iter().enumerate() {
            let n = cell.vertices.len();
            for i in 0..n {
                let a = cell.vertices[i];
                let b = cell.vertices[(i + 1) % n];
                let key = (a.min(b), a.max(b));
                match edge_map.get_mut(&key) {
                    None => {
                        let pa = vertices[a];
                        let pb = vertices[b];
                        let t = pb - pa;
                        let len = t.norm();
                        if len == 0.0 {
                            return Err(Error::InvalidMesh(format!(
                                "cell {ci} has a zero-length edge"
                            )));
                        }
                        let normal = Vector2::new(t.y, -t.x) / len;
                        let fi = faces.len();
                        faces.push(Face {
                            v: [a, b],
                            owner: ci,
                            neighbor: None,
                            normal,
                            length: len,
                            midpoint: Point2::new(0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)),
                        });
                        edge_map.insert(key, (fi, ci, 1));
                        cell_faces[ci].push(fi);
                    }
                    Some((fi, owner, count)) => {
                        *count += 1;
                        if *count > 2 {
                            return Err(Error::InvalidMesh(format!(
                                "edge ({},{}) is shared by more than two cells",
                                key.0, key.1
                            )));
                        }
                        if *owner == ci {
                            return Err(Error::InvalidMesh(format!(
                                "cell {ci} traverses edge ({},{}) twice",
                                key.0, key.1
                            )));
                        }
                        faces[*fi].neighbor = Some(ci);
                        cell_faces[ci].push(*fi);
                    }
                }
            }
        }

        Ok(PolyMesh {
            vertices,
            cells,
            faces,
            cell_faces,
            geometry,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn geometry(&self, cell: usize) -> &CellGeometry {
        &self.geometry[cell]
    }

    /// Vertex coordinates of a cell's loop.
    pub fn cell_points(&self, cell: usize) -> Vec<Point2> {
        self.cells[cell]
            .vertices
            .iter()
            .map(|&v| self.vertices[v])
            .collect()
    }

    pub fn face_endpoints(&self, face: usize) -> (Point2, Point2) {
        let f = &self.faces[face];
        (self.vertices[f.v[0]], self.vertices[f.v[1]])
    }

    pub fn boundary_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| self.faces[f].is_boundary())
    }

    pub fn internal_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(|&f| !self.faces[f].is_boundary())
    }

    /// Largest cell diameter; the mesh size h entering convergence rates.
    pub fn mesh_size(&self) -> f64 {
        self.geometry
            .iter()
            .fold(0.0f64, |m, g| m.max(g.diameter))
    }

    pub fn total_area(&self) -> f64 {
        self.geometry.iter().map(|g| g.area).sum()
    }

    /// Locate the cell containing `p` (boundary inclusive). Ties between
    /// adjacent cells resolve to the lowest cell index.
    pub fn locate(&self, p: Point2) -> Option<usize> {
        let tol = 1e-12 * self.mesh_size().max(1.0);
        for ci in 0..self.cells.len() {
            let (lo, hi) = self.geometry[ci].bbox;
            if p.x < lo.x - tol || p.x > hi.x + tol || p.y < lo.y - tol || p.y > hi.y + tol {
                continue;
            }
            let pts = self.cell_points(ci);
            if geometry::polygon_contains(&pts, p, tol) {
                return Some(ci);
            }
        }
        None
    }

    /// Distance from `p` to the nearest edge of `cell`; used to warn when a
    /// point source sits on a cell boundary.
    pub fn distance_to_cell_boundary(&self, cell: usize, p: Point2) -> f64 {
        let pts = self.cell_points(cell);
        let n = pts.len();
        let mut d = f64::INFINITY;
        for i in 0..n {
            d = d.min(geometry::point_segment_distance(p, pts[i], pts[(i + 1) % n]));
        }
        d
    }

    pub fn from_text(text: &str) -> Result<Self> {
        format::parse(text)
    }

    pub fn to_text(&self) -> String {
        format::write(self)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        format::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    /// Reassign region tags from a predicate on cell centroids.
    pub fn assign_regions(&mut self, f: impl Fn(Point2) -> i32) {
        for ci in 0..self.cells.len() {
            self.cells[ci].region = f(self.geometry[ci].centroid);
        }
    }
}

fn is_simple_polygon(loop_idx: &[usize], vertices: &[Point2]) -> bool {
    let n = loop_idx.len();
    let p = |i: usize| vertices[loop_idx[i % n]];
    for i in 0..n {
        for j in i + 1..n {
            // skip adjacent edges (they share an endpoint)
            if j == i || (j + 1) % n == i || (i + 1) % n == j {
                continue;
            }
            if geometry::segments_intersect(p(i), p(i + 1), p(j), p(j + 1)) {
                return false;
            }
        }
    }
    true
}
