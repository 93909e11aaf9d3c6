//! Plain-text mesh format.
//!
//! ```text
//! vertices <n>
//! <x> <y>                 (n lines, decimal coordinates)
//! cells <m>
//! <k> <v0> <v1> ... <vk-1>  (m lines, CCW vertex loops, 0-based indices)
//! regions
//! <tag>                   (m lines, one integer region tag per cell)
//! ```
//!
//! The writer prints coordinates with the shortest representation that parses
//! back to the identical floating-point value, so write -> parse round-trips
//! are exact.

use super::{Cell, PolyMesh};
use crate::error::{Error, Result};
use crate::geometry::Point2;

pub fn parse(text: &str) -> Result<PolyMesh> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));

    let header = lines
        .next()
        .ok_or_else(|| Error::MeshFormat("empty mesh file".into()))?;
    let n_vertices = section_count(header, "vertices")?;

    let mut vertices = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let line = lines
            .next()
            .ok_or_else(|| Error::MeshFormat("unexpected end of vertex list".into()))?;
        let mut it = line.split_whitespace();
        let x = parse_f64(it.next(), "vertex x")?;
        let y = parse_f64(it.next(), "vertex y")?;
        if it.next().is_some() {
            return Err(Error::MeshFormat(format!(
                "trailing tokens in vertex line {line:?}"
            )));
        }
        vertices.push(Point2::new(x, y));
    }

    let header = lines
        .next()
        .ok_or_else(|| Error::MeshFormat("missing cells section".into()))?;
    let n_cells = section_count(header, "cells")?;

    let mut loops = Vec::with_capacity(n_cells);
    for _ in 0..n_cells {
        let line = lines
            .next()
            .ok_or_else(|| Error::MeshFormat("unexpected end of cell list".into()))?;
        let mut it = line.split_whitespace();
        let k: usize = parse_usize(it.next(), "cell vertex count")?;
        if k < 3 {
            return Err(Error::MeshFormat(format!(
                "cell with {k} vertices in line {line:?}"
            )));
        }
        let mut idx = Vec::with_capacity(k);
        for _ in 0..k {
            idx.push(parse_usize(it.next(), "cell vertex index")?);
        }
        if it.next().is_some() {
            return Err(Error::MeshFormat(format!(
                "trailing tokens in cell line {line:?}"
            )));
        }
        loops.push(idx);
    }

    let header = lines
        .next()
        .ok_or_else(|| Error::MeshFormat("missing regions section".into()))?;
    if header != "regions" {
        return Err(Error::MeshFormat(format!(
            "expected `regions`, found {header:?}"
        )));
    }
    let mut cells = Vec::with_capacity(n_cells);
    for verts in loops {
        let line = lines
            .next()
            .ok_or_else(|| Error::MeshFormat("unexpected end of region list".into()))?;
        let region: i32 = line
            .parse()
            .map_err(|_| Error::MeshFormat(format!("bad region tag {line:?}")))?;
        cells.push(Cell {
            vertices: verts,
            region,
        });
    }
    if let Some(extra) = lines.next() {
        return Err(Error::MeshFormat(format!(
            "trailing content after regions: {extra:?}"
        )));
    }

    PolyMesh::new(vertices, cells)
}

pub fn write(mesh: &PolyMesh) -> String {
    let mut out = String::new();
    out.push_str(&format!("vertices {}\n", mesh.vertices.len()));
    for v in &mesh.vertices {
        out.push_str(&format!("{:?} {:?}\n", v.x, v.y));
    }
    out.push_str(&format!("cells {}\n", mesh.cells.len()));
    for c in &mesh.cells {
        out.push_str(&format!("{}", c.vertices.len()));
        for &v in &c.vertices {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out.push_str("regions\n");
    for c in &mesh.cells {
        out.push_str(&format!("{}\n", c.region));
    }
    out
}

fn section_count(line: &str, keyword: &str) -> Result<usize> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(k), Some(n), None) if k == keyword => n
            .parse()
            .map_err(|_| Error::MeshFormat(format!("bad {keyword} count {n:?}"))),
        _ => Err(Error::MeshFormat(format!(
            "expected `{keyword} <count>`, found {line:?}"
        ))),
    }
}

fn parse_f64(tok: Option<&str>, what: &str) -> Result<f64> {
    let tok = tok.ok_or_else(|| Error::MeshFormat(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::MeshFormat(format!("bad {what} {tok:?}")))
}

fn parse_usize(tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::MeshFormat(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::MeshFormat(format!("bad {what} {tok:?}")))
}

#[cfg(test)]
mod tests {
    use super::super::cartesian;
    use super::*;

    #[test]
    fn write_parse_round_trip_is_exact() {
        let m = cartesian(3, 2, [0.0, 1.0], [0.0, 0.7]);
        let text = write(&m);
        let m2 = parse(&text).unwrap();
        assert_eq!(m.vertices.len(), m2.vertices.len());
        for (a, b) in m.vertices.iter().zip(&m2.vertices) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
        for (a, b) in m.cells.iter().zip(&m2.cells) {
            assert_eq!(a.vertices, b.vertices);
            assert_eq!(a.region, b.region);
        }
        assert_eq!(text, write(&m2));
    }

    #[test]
    fn small_hand_written_mesh_parses() {
        let text = "vertices 4\n0 0\n1 0\n1 1\n0 1\ncells 1\n4 0 1 2 3\nregions\n7\n";
        let m = parse(text).unwrap();
        assert_eq!(m.n_cells(), 1);
        assert_eq!(m.cells[0].region, 7);
        assert_eq!(m.geometry(0).area, 1.0);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(parse("").is_err());
        assert!(parse("vertices 1\n0 0\ncells 1\n3 0 0 0\nregions\n0\n").is_err());
        assert!(parse("vertices 2\n0 0\n1 1\ncells 0\nregions\n").is_err());
        // wrong count
        assert!(parse("vertices 3\n0 0\n1 0\ncells 1\n3 0 1 2\nregions\n0\n").is_err());
        // missing regions
        assert!(parse("vertices 3\n0 0\n1 0\n0 1\ncells 1\n3 0 1 2\n").is_err());
    }
}
