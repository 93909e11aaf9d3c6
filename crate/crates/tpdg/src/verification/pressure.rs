//! Pore-pressure recovery and its error norm.
//!
//! The pressure was eliminated from the evolution system through the storage
//! law; it is recovered from a computed state by evaluating
//!
//! ```text
//! p_h = p_0 - (1/c0) (alpha div(u_h - u_0) + div(w_h - w_0) - b0 (T_h - T_0))
//! ```
//!
//! cellwise and projecting onto the scalar space. With cellwise-constant
//! coefficients the right-hand side is itself a broken polynomial of degree
//! at most the space degree, so the projection is exact and the recovery
//! introduces no additional consistency error. When no initial pressure is
//! given, the reference `p_0 = -(1/c0)(alpha div u_0 + div w_0)` makes the
//! recovered field vanish for a zero state with zero reference temperature.
//!
//! The pressure error is measured in a permeability-weighted dG norm with a
//! jump penalty built like the primary penalties: `gamma` is ten times the
//! larger adjacent value of `k l^2 / h`, summed over every face including
//! the boundary.

use crate::error::Result;
use crate::geometry::{Point2, Vector2};
use crate::materials::MaterialMap;
use crate::mesh::PolyMesh;
use crate::space::{cell_rule, face_rule, DGSpace};

use crate::assembly::penalty_value;

use super::norms::ERROR_QUADRATURE_BUMP;

/// Multiplier of the pressure-norm jump weight, matching the default
/// stabilization multiplier of the primary forms.
pub const PRESSURE_PENALTY_MULTIPLIER: f64 = 10.0;

/// L2 and weighted dG norms of a recovered-pressure error.
#[derive(Debug, Clone, Copy, Default)]
pub struct PressureNorms {
    pub l2: f64,
    pub dg: f64,
}

/// Recover the pressure coefficients from a state and its initial state.
///
/// `x` and `x0` are full `[U; W; T]` vectors; `p0` optionally supplies
/// initial-pressure coefficients on the scalar space. Without it the
/// consistent reference described in the module docs is used.
pub fn recover_pressure(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    x: &[f64],
    x0: &[f64],
    p0: Option<&[f64]>,
) -> Result<Vec<f64>> {
    let n = space.n_dofs;
    assert_eq!(x.len(), 5 * n, "state vector must hold [U; W; T]");
    assert_eq!(x0.len(), 5 * n, "reference state must hold [U; W; T]");
    if let Some(p) = p0 {
        assert_eq!(p.len(), n, "initial pressure lives on the scalar space");
    }

    let mut coeffs = vec![0.0; n];
    for cell in 0..mesh.n_cells() {
        let deg = space.degrees[cell];
        let rule = cell_rule(mesh, cell, 2 * deg + 2)?;
        let tab = space.tabulate(cell, &rule.points);
        let mat = materials.for_cell(mesh, cell)?;
        let m = space.n_local(cell);
        let (so, vo) = (space.offset(cell), space.vec_offset(cell));
        let inv_c0 = 1.0 / mat.c0;

        for q in 0..rule.len() {
            let mut div_u = 0.0;
            let mut div_w = 0.0;
            let mut div_u0 = 0.0;
            let mut div_w0 = 0.0;
            let mut t_now = 0.0;
            let mut t_ref = 0.0;
            let mut p_ref = 0.0;
            for i in 0..m {
                let (v, dx, dy) = (tab.val[(q, i)], tab.dx[(q, i)], tab.dy[(q, i)]);
                div_u += x[vo + i] * dx + x[vo + m + i] * dy;
                div_w += x[2 * n + vo + i] * dx + x[2 * n + vo + m + i] * dy;
                div_u0 += x0[vo + i] * dx + x0[vo + m + i] * dy;
                div_w0 += x0[2 * n + vo + i] * dx + x0[2 * n + vo + m + i] * dy;
                t_now += x[4 * n + so + i] * v;
                t_ref += x0[4 * n + so + i] * v;
                if let Some(p) = p0 {
                    p_ref += p[so + i] * v;
                }
            }
            let value = match p0 {
                Some(_) => {
                    p_ref
                        - inv_c0
                            * (mat.alpha * (div_u - div_u0) + (div_w - div_w0)
                                - mat.b0 * (t_now - t_ref))
                }
                None => -inv_c0 * (mat.alpha * div_u + div_w - mat.b0 * (t_now - t_ref)),
            };
            let wq = rule.weights[q];
            for i in 0..m {
                coeffs[so + i] += wq * value * tab.val[(q, i)];
            }
        }
    }
    Ok(coeffs)
}

/// Pressure error norms against an exact value/gradient pair.
pub fn pressure_error_norms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    p: &[f64],
    exact: &dyn Fn(Point2) -> f64,
    exact_grad: &dyn Fn(Point2) -> Vector2,
) -> Result<PressureNorms> {
    assert_eq!(p.len(), space.n_dofs);
    let mut l2 = 0.0;
    let mut dg = 0.0;

    for cell in 0..mesh.n_cells() {
        let deg = space.degrees[cell];
        let rule = cell_rule(mesh, cell, 2 * deg + 2 + ERROR_QUADRATURE_BUMP)?;
        let tab = space.tabulate(cell, &rule.points);
        let mat = materials.for_cell(mesh, cell)?;
        let m = space.n_local(cell);
        let so = space.offset(cell);
        for q in 0..rule.len() {
            let pt = rule.points[q];
            let mut e = -exact(pt);
            let mut g = -exact_grad(pt);
            for i in 0..m {
                e += p[so + i] * tab.val[(q, i)];
                g.x += p[so + i] * tab.dx[(q, i)];
                g.y += p[so + i] * tab.dy[(q, i)];
            }
            l2 += rule.weights[q] * e * e;
            dg += rule.weights[q] * mat.k * g.norm_squared();
        }
    }

    for face in 0..mesh.n_faces() {
        let f = &mesh.faces[face];
        let (pa, pb) = mesh.face_endpoints(face);
        let max_deg = std::iter::once(f.owner)
            .chain(f.neighbor)
            .map(|c| space.degrees[c])
            .max()
            .unwrap_or(0);
        let rule = face_rule(pa, pb, 2 * max_deg + 2 + ERROR_QUADRATURE_BUMP)?;

        let mut sides = Vec::with_capacity(2);
        for cell in std::iter::once(f.owner).chain(f.neighbor) {
            let mat = materials.for_cell(mesh, cell)?;
            sides.push((mat.k, space.degrees[cell], mesh.geometry(cell).diameter));
        }
        let gamma = penalty_value(PRESSURE_PENALTY_MULTIPLIER, &sides)?;

        let mut jump = vec![0.0; rule.len()];
        for (idx, cell) in std::iter::once(f.owner).chain(f.neighbor).enumerate() {
            let sign = if idx == 0 { 1.0 } else { -1.0 };
            let tab = space.tabulate(cell, &rule.points);
            let m = space.n_local(cell);
            let so = space.offset(cell);
            for q in 0..rule.len() {
                for i in 0..m {
                    jump[q] += sign * p[so + i] * tab.val[(q, i)];
                }
            }
        }
        if f.is_boundary() {
            for q in 0..rule.len() {
                jump[q] -= exact(rule.points[q]);
            }
        }
        for q in 0..rule.len() {
            dg += rule.weights[q] * gamma * jump[q] * jump[q];
        }
    }

    Ok(PressureNorms {
        l2: l2.sqrt(),
        dg: dg.sqrt(),
    })
}

/// Plain norms of a discrete pressure (exact field taken as zero).
pub fn pressure_field_norms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    p: &[f64],
) -> Result<PressureNorms> {
    pressure_error_norms(mesh, space, materials, p, &|_| 0.0, &|_| Vector2::zeros())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{convergence_test, MaterialMap};
    use crate::mesh::{brick, cartesian};
    use crate::space::{l2_project, l2_project_vector};
    use rand::{Rng, SeedableRng};

    #[test]
    fn zero_state_recovers_zero_pressure() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let materials = MaterialMap::single(convergence_test());
        let x = vec![0.0; 5 * space.n_dofs];
        let p = recover_pressure(&mesh, &space, &materials, &x, &x, None).unwrap();
        assert!(p.iter().all(|v| v.abs() <= 1e-14));
    }

    /// With u = w = 0 the recovery reduces to (b0/c0)(T - T0); for a
    /// discrete temperature this is an exact coefficient scaling.
    #[test]
    fn pure_temperature_state_scales_coefficients() {
        let mesh = cartesian(2, 3, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let mat = convergence_test();
        let materials = MaterialMap::single(mat.clone());
        let n = space.n_dofs;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut x = vec![0.0; 5 * n];
        for v in x[4 * n..].iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
        let x0 = vec![0.0; 5 * n];
        let p = recover_pressure(&mesh, &space, &materials, &x, &x0, None).unwrap();
        let c2 = mat.c2();
        for (pi, ti) in p.iter().zip(&x[4 * n..]) {
            assert!((pi - c2 * ti).abs() <= 1e-12 * c2.max(1.0));
        }
    }

    /// u = (x, 0), everything else zero: div u = 1, so the recovered
    /// pressure is the constant -alpha/c0.
    #[test]
    fn uniform_dilatation_gives_constant_pressure() {
        let mesh = cartesian(1, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let mat = convergence_test();
        let materials = MaterialMap::single(mat.clone());
        let n = space.n_dofs;
        let u = l2_project_vector(&mesh, &space, |p| Vector2::new(p.x, 0.0), 0).unwrap();
        let mut x = vec![0.0; 5 * n];
        x[..2 * n].copy_from_slice(&u);
        let x0 = vec![0.0; 5 * n];
        let p = recover_pressure(&mesh, &space, &materials, &x, &x0, None).unwrap();
        let value = space.scalar_value(&p, 0, Point2::new(0.3, 0.6));
        let expect = -mat.alpha / mat.c0;
        assert!((value - expect).abs() <= 1e-9 * expect.abs());
    }

    /// An explicit initial pressure shifts the recovery by exactly that
    /// field when the state equals the reference state.
    #[test]
    fn reference_state_returns_initial_pressure() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let materials = MaterialMap::single(convergence_test());
        let n = space.n_dofs;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let x: Vec<f64> = (0..5 * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p0: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = recover_pressure(&mesh, &space, &materials, &x, &x, Some(&p0)).unwrap();
        for (a, b) in p.iter().zip(&p0) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    /// Bubble pressure with k = 0.2: the volume part is 0.2 * 1/45 and all
    /// jumps vanish (continuous field, zero boundary trace).
    #[test]
    fn bubble_pressure_matches_closed_form_gradient_energy() {
        let mesh = brick(2, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 4).unwrap();
        let materials = MaterialMap::single(convergence_test());
        let p = l2_project(&mesh, &space, |q| q.x * (1.0 - q.x) * q.y * (1.0 - q.y), 2).unwrap();
        let norms = pressure_field_norms(&mesh, &space, &materials, &p).unwrap();
        let exact = (0.2 / 45.0f64).sqrt();
        assert!((norms.dg - exact).abs() <= 1e-10, "dg = {}, exact = {exact}", norms.dg);
    }

    /// Constant pressure 1 on a single unit cell: only the four boundary
    /// jumps contribute, each gamma = 10 k l^2 / sqrt(2) times length 1.
    #[test]
    fn constant_pressure_boundary_jumps_match_hand_value() {
        let mesh = cartesian(1, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let materials = MaterialMap::single(convergence_test());
        let mut p = vec![0.0; space.n_dofs];
        p[0] = 1.0; // the orthonormal basis starts with the constant 1/sqrt(area) = 1
        let norms = pressure_field_norms(&mesh, &space, &materials, &p).unwrap();
        let gamma = 10.0 * 0.2 * 4.0 / 2.0f64.sqrt();
        let exact = (4.0 * gamma).sqrt();
        assert!((norms.dg - exact).abs() <= 1e-12, "dg = {}, exact = {exact}", norms.dg);
    }
}
