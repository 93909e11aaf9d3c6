//! Definition-based evaluation of the discrete error norms.
//!
//! The norms here are computed directly from their definitions: volume
//! quadrature of weighted gradients plus face-by-face jump sums. They do not
//! reuse the assembled Gram matrices, so agreement between the two routes is
//! a meaningful consistency check (and is asserted in the tests). Quadrature
//! runs two orders above the assembly default because the comparison fields
//! are generally non-polynomial.
//!
//! Error norms take the exact solution as a set of closures. On interior
//! faces the exact field cancels out of the jump (it is continuous), so only
//! boundary faces actually sample the closures there; the boundary jump is
//! the difference between the discrete trace and the exact value, which is
//! how weakly imposed Dirichlet data enters the error.

use crate::error::Result;
use crate::geometry::{Matrix2, Point2, Vector2};
use crate::materials::MaterialMap;
use crate::mesh::PolyMesh;
use crate::space::{cell_rule, face_rule, DGSpace};

use crate::assembly::{penalty_on_face, PenaltyCoefficients, PenaltyKind};

/// Extra quadrature order used for error integration on cells and faces.
pub const ERROR_QUADRATURE_BUMP: usize = 2;

/// Exact solution fields and the derivatives the norms need.
///
/// All closures take a physical point; time dependence is baked in by the
/// caller (see `ManufacturedCase::exact_fields`). The `zero` constructor
/// turns the error norms into plain norms of the discrete fields.
pub struct ExactFields<'a> {
    pub u: Box<dyn Fn(Point2) -> Vector2 + 'a>,
    pub grad_u: Box<dyn Fn(Point2) -> Matrix2 + 'a>,
    pub w: Box<dyn Fn(Point2) -> Vector2 + 'a>,
    pub grad_w: Box<dyn Fn(Point2) -> Matrix2 + 'a>,
    pub temperature: Box<dyn Fn(Point2) -> f64 + 'a>,
    pub grad_temperature: Box<dyn Fn(Point2) -> Vector2 + 'a>,
}

impl ExactFields<'static> {
    /// All fields identically zero; error norms degenerate to field norms.
    pub fn zero() -> Self {
        ExactFields {
            u: Box::new(|_| Vector2::zeros()),
            grad_u: Box::new(|_| Matrix2::zeros()),
            w: Box::new(|_| Vector2::zeros()),
            grad_w: Box::new(|_| Matrix2::zeros()),
            temperature: Box::new(|_| 0.0),
            grad_temperature: Box::new(|_| Vector2::zeros()),
        }
    }
}

/// L2 and dG error norms of a state vector against exact fields.
///
/// `dg_u` is the elastic dG norm (strain energy plus sigma jumps), `dg_w`
/// the storage seminorm (weighted divergence plus zeta normal jumps) of the
/// filtration error alone, `dg_t` the conduction dG norm.
#[derive(Debug, Clone, Copy, Default)]
pub struct ErrorNorms {
    pub l2_u: f64,
    pub l2_w: f64,
    pub l2_t: f64,
    pub dg_u: f64,
    pub dg_w: f64,
    pub dg_t: f64,
}

/// Accumulators for the squared norms; square roots are taken at the end.
#[derive(Default)]
struct Accum {
    l2_u: f64,
    l2_w: f64,
    l2_t: f64,
    dg_u: f64,
    dg_w: f64,
    dg_t: f64,
}

/// Evaluate all error norms of a 5n state `[U; W; T]` against exact fields.
pub fn error_norms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pen: &PenaltyCoefficients,
    x: &[f64],
    exact: &ExactFields,
) -> Result<ErrorNorms> {
    let n = space.n_dofs;
    assert_eq!(x.len(), 5 * n, "state vector must hold [U; W; T]");
    let (xu, rest) = x.split_at(2 * n);
    let (xw, xt) = rest.split_at(2 * n);

    let mut acc = Accum::default();
    for cell in 0..mesh.n_cells() {
        volume_terms(mesh, space, materials, cell, xu, xw, xt, exact, &mut acc)?;
    }
    for face in 0..mesh.n_faces() {
        face_terms(mesh, space, materials, pen, face, xu, xw, xt, exact, &mut acc)?;
    }

    Ok(ErrorNorms {
        l2_u: acc.l2_u.sqrt(),
        l2_w: acc.l2_w.sqrt(),
        l2_t: acc.l2_t.sqrt(),
        dg_u: acc.dg_u.sqrt(),
        dg_w: acc.dg_w.sqrt(),
        dg_t: acc.dg_t.sqrt(),
    })
}

/// Plain norms of the discrete fields (exact solution taken as zero).
pub fn field_norms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pen: &PenaltyCoefficients,
    x: &[f64],
) -> Result<ErrorNorms> {
    error_norms(mesh, space, materials, pen, x, &ExactFields::zero())
}

#[allow(clippy::too_many_arguments)]
fn volume_terms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    cell: usize,
    xu: &[f64],
    xw: &[f64],
    xt: &[f64],
    exact: &ExactFields,
    acc: &mut Accum,
) -> Result<()> {
    let deg = space.degrees[cell];
    let rule = cell_rule(mesh, cell, 2 * deg + 2 + ERROR_QUADRATURE_BUMP)?;
    let tab = space.tabulate(cell, &rule.points);
    let mat = materials.for_cell(mesh, cell)?;
    let m = space.n_local(cell);
    let (so, vo) = (space.offset(cell), space.vec_offset(cell));
    let inv_c0 = 1.0 / mat.c0;

    for q in 0..rule.len() {
        let p = rule.points[q];
        let wq = rule.weights[q];

        let mut eu = -(exact.u)(p);
        let mut ew = -(exact.w)(p);
        let mut et = -(exact.temperature)(p);
        let mut gu = -(exact.grad_u)(p);
        let mut gw = -(exact.grad_w)(p);
        let mut gt = -(exact.grad_temperature)(p);
        for i in 0..m {
            let (v, dx, dy) = (tab.val[(q, i)], tab.dx[(q, i)], tab.dy[(q, i)]);
            eu.x += xu[vo + i] * v;
            eu.y += xu[vo + m + i] * v;
            ew.x += xw[vo + i] * v;
            ew.y += xw[vo + m + i] * v;
            et += xt[so + i] * v;
            gu[(0, 0)] += xu[vo + i] * dx;
            gu[(0, 1)] += xu[vo + i] * dy;
            gu[(1, 0)] += xu[vo + m + i] * dx;
            gu[(1, 1)] += xu[vo + m + i] * dy;
            gw[(0, 0)] += xw[vo + i] * dx;
            gw[(0, 1)] += xw[vo + i] * dy;
            gw[(1, 0)] += xw[vo + m + i] * dx;
            gw[(1, 1)] += xw[vo + m + i] * dy;
            gt.x += xt[so + i] * dx;
            gt.y += xt[so + i] * dy;
        }

        acc.l2_u += wq * eu.norm_squared();
        acc.l2_w += wq * ew.norm_squared();
        acc.l2_t += wq * et * et;

        let exy = 0.5 * (gu[(0, 1)] + gu[(1, 0)]);
        let strain_sq = gu[(0, 0)] * gu[(0, 0)] + gu[(1, 1)] * gu[(1, 1)] + 2.0 * exy * exy;
        acc.dg_u += wq * 2.0 * mat.mu * strain_sq;

        let div_w = gw[(0, 0)] + gw[(1, 1)];
        acc.dg_w += wq * inv_c0 * div_w * div_w;

        acc.dg_t += wq * mat.theta * gt.norm_squared();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn face_terms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pen: &PenaltyCoefficients,
    face: usize,
    xu: &[f64],
    xw: &[f64],
    xt: &[f64],
    exact: &ExactFields,
    acc: &mut Accum,
) -> Result<()> {
    let f = &mesh.faces[face];
    let (pa, pb) = mesh.face_endpoints(face);
    let max_deg = std::iter::once(f.owner)
        .chain(f.neighbor)
        .map(|c| space.degrees[c])
        .max()
        .unwrap_or(0);
    let rule = face_rule(pa, pb, 2 * max_deg + 2 + ERROR_QUADRATURE_BUMP)?;

    let sigma = penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Shear)?;
    let zeta = penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Storage)?;
    let varrho = penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Thermal)?;
    let normal = f.normal;

    // Trace of each side at the face quadrature points, owner with sign +1.
    let mut jump_u = vec![Vector2::zeros(); rule.len()];
    let mut jump_w = vec![Vector2::zeros(); rule.len()];
    let mut jump_t = vec![0.0; rule.len()];
    for (idx, cell) in std::iter::once(f.owner).chain(f.neighbor).enumerate() {
        let sign = if idx == 0 { 1.0 } else { -1.0 };
        let tab = space.tabulate(cell, &rule.points);
        let m = space.n_local(cell);
        let (so, vo) = (space.offset(cell), space.vec_offset(cell));
        for q in 0..rule.len() {
            for i in 0..m {
                let v = tab.val[(q, i)];
                jump_u[q].x += sign * xu[vo + i] * v;
                jump_u[q].y += sign * xu[vo + m + i] * v;
                jump_w[q].x += sign * xw[vo + i] * v;
                jump_w[q].y += sign * xw[vo + m + i] * v;
                jump_t[q] += sign * xt[so + i] * v;
            }
        }
    }
    if f.is_boundary() {
        for q in 0..rule.len() {
            let p = rule.points[q];
            jump_u[q] -= (exact.u)(p);
            jump_w[q] -= (exact.w)(p);
            jump_t[q] -= (exact.temperature)(p);
        }
    }

    for q in 0..rule.len() {
        let wq = rule.weights[q];
        acc.dg_u += wq * sigma * jump_u[q].norm_squared();
        let wn = jump_w[q].dot(&normal);
        acc.dg_w += wq * zeta * wn * wn;
        acc.dg_t += wq * varrho * jump_t[q] * jump_t[q];
    }
    Ok(())
}
