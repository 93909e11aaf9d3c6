//! Shape-regularity diagnostics.
//!
//! For every face F of a cell K we form the simplex spanned by F and the cell
//! centroid and report the ratio d*|S|/(h_K*|F|) (d = 2). Well-shaped cells
//! have ratios bounded away from zero; slivers and cells with very short
//! faces show up as small minima. This is a diagnostic report, not a gate:
//! meshes are never rejected for poor regularity.

use super::PolyMesh;
use crate::geometry::orient2d;

#[derive(Debug, Clone)]
pub struct RegularityReport {
    /// Per-cell minimum of the face-simplex ratios.
    pub per_cell: Vec<f64>,
    pub min: f64,
    pub median: f64,
    /// Cells whose ratio falls below `flag_threshold`.
    pub flagged: Vec<usize>,
    pub flag_threshold: f64,
}

pub fn regularity_report(mesh: &PolyMesh) -> RegularityReport {
    let flag_threshold = 0.05;
    let mut per_cell = Vec::with_capacity(mesh.n_cells());
    for ci in 0..mesh.n_cells() {
        let g = mesh.geometry(ci);
        let mut worst = f64::INFINITY;
        for &fi in &mesh.cell_faces[ci] {
            let f = &mesh.faces[fi];
            let (a, b) = mesh.face_endpoints(fi);
            // signed so that centroid simplices folding outside a non-star
            // cell produce a non-positive (flagged) ratio
            let simplex_area = 0.5 * orient2d(a, b, g.centroid).abs();
            let ratio = 2.0 * simplex_area / (g.diameter * f.length);
            worst = worst.min(ratio);
        }
        per_cell.push(worst);
    }
    let mut sorted = per_cell.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = sorted[sorted.len() / 2];
    let flagged = per_cell
        .iter()
        .enumerate()
        .filter(|(_, &r)| r < flag_threshold)
        .map(|(i, _)| i)
        .collect();
    RegularityReport {
        min: sorted[0],
        median,
        per_cell,
        flagged,
        flag_threshold,
    }
}
