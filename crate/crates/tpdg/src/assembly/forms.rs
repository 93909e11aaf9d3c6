//! Assembly of the discrete bilinear forms.
//!
//! All face integrals are evaluated once per face; owner/neighbor pairings
//! scatter into up to four blocks. Jumps are taken relative to the face
//! normal stored on the mesh (outward from the owner cell), so the owner
//! side enters with sign +1 and the neighbor with -1; boundary faces use the
//! one-sided trace with unit average weight.
//!
//! Produced matrices, on the scalar space (n dofs) or the vector space (2n):
//! * vector masses weighted by rho, rho_f, rho_w, and 1/k,
//! * the scalar temperature mass weighted by a0 - b0^2/c0,
//! * interior-penalty stiffness for elasticity (mu and lambda parts), for the
//!   storage operator div/div in 1/c0, and for heat conduction,
//! * the divergence coupling without material weights (row-scaled later),
//! * Gram matrices of the dG norms (volume + jump penalty only).

use crate::error::{Error, Result};
use crate::materials::{MaterialMap, MaterialRegion};
use crate::mesh::PolyMesh;
use crate::space::{cell_rule, face_rule, BasisTable, DGSpace};
use crate::sparse::{Csr, Triplets};
use nalgebra::DMatrix;

use super::penalty::{penalty_on_face, PenaltyCoefficients, PenaltyKind};

#[derive(Debug, Clone)]
pub struct Forms {
    pub n_scalar: usize,
    /// Vector mass weighted by the bulk density rho.
    pub mass_rho: Csr,
    /// Vector mass weighted by the fluid density rho_f.
    pub mass_rho_f: Csr,
    /// Vector mass weighted by the filtration inertia rho_w.
    pub mass_rho_w: Csr,
    /// Filtration drag: vector mass weighted by 1/k.
    pub damp_w: Csr,
    /// Scalar mass weighted by the reduced thermal capacity.
    pub mass_t: Csr,
    /// Elastic stiffness (mu and lambda interior-penalty parts).
    pub a_e: Csr,
    /// Storage stiffness div/div in 1/c0, without the Biot alpha weighting.
    pub a_p: Csr,
    /// Heat conduction stiffness.
    pub a_t: Csr,
    /// Divergence coupling (div v, S) with face correction, unweighted.
    pub c_plain: Csr,
    /// Gram matrix of the elastic dG norm: 2 mu strain + sigma jumps.
    pub n_e: Csr,
    /// Gram matrix of the storage seminorm: 1/c0 div + zeta normal jumps.
    pub n_p: Csr,
    /// Gram matrix of the thermal dG norm: theta gradient + varrho jumps.
    pub n_t: Csr,
    /// Biot alpha of each vector dof's cell.
    pub alpha_diag: Vec<f64>,
    /// Coupling weight alpha b0/c0 + beta of each scalar dof's cell.
    pub c1_diag: Vec<f64>,
    /// Coupling weight b0/c0 of each scalar dof's cell.
    pub c2_diag: Vec<f64>,
    /// Scalar dof offset of each cell, with the total appended at the end.
    pub cell_offsets: Vec<usize>,
}

pub fn assemble_forms(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pen: &PenaltyCoefficients,
) -> Result<Forms> {
    assemble_forms_detailed(mesh, space, materials, pen, 0, true)
}

/// Assembly with an extra quadrature-order bump and optional suppression of
/// boundary-face terms (pure Neumann variant used by diagnostics).
pub fn assemble_forms_detailed(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pen: &PenaltyCoefficients,
    order_bump: usize,
    include_boundary: bool,
) -> Result<Forms> {
    pen.validate()?;
    let n = space.n_dofs;
    let nv = 2 * n;

    let mut alpha_diag = vec![0.0; nv];
    let mut c1_diag = vec![0.0; n];
    let mut c2_diag = vec![0.0; n];
    for cell in 0..mesh.n_cells() {
        let mat = materials.for_cell(mesh, cell)?;
        let m = space.n_local(cell);
        let (so, vo) = (space.offset(cell), space.vec_offset(cell));
        for i in 0..m {
            c1_diag[so + i] = mat.c1();
            c2_diag[so + i] = mat.c2();
            alpha_diag[vo + i] = mat.alpha;
            alpha_diag[vo + m + i] = mat.alpha;
        }
    }

    let mut tri = FormTriplets::new(n);

    for cell in 0..mesh.n_cells() {
        let deg = space.degrees[cell];
        let m = space.n_local(cell);
        let rule = cell_rule(mesh, cell, 2 * deg + 2 + order_bump)?;
        let tab = space.tabulate(cell, &rule.points);
        let mat = materials.for_cell(mesh, cell)?;
        volume_cell(&mut tri, space, cell, m, &rule.weights, &tab, mat);
    }

    for face in 0..mesh.n_faces() {
        let f = &mesh.faces[face];
        if f.is_boundary() && !include_boundary {
            continue;
        }
        let (pa, pb) = mesh.face_endpoints(face);
        let max_deg = std::iter::once(f.owner)
            .chain(f.neighbor)
            .map(|c| space.degrees[c])
            .max()
            .unwrap_or(0);
        let rule = face_rule(pa, pb, 2 * max_deg + 2 + order_bump)?;

        let pens = FacePenalties {
            sigma: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Shear)?,
            xi: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Dilatation)?,
            zeta: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Storage)?,
            varrho: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Thermal)?,
        };

        let boundary = f.is_boundary();
        let mut sides = Vec::with_capacity(2);
        for (idx, cell) in std::iter::once(f.owner).chain(f.neighbor).enumerate() {
            sides.push(FaceSide {
                m: space.n_local(cell),
                so: space.offset(cell),
                vo: space.vec_offset(cell),
                jump: if idx == 0 { 1.0 } else { -1.0 },
                avg: if boundary { 1.0 } else { 0.5 },
                tab: space.tabulate(cell, &rule.points),
                mat: materials.for_cell(mesh, cell)?,
            });
        }

        let normal = f.normal;
        for a in &sides {
            for b in &sides {
                face_pair(&mut tri, a, b, &rule.weights, normal, &pens);
            }
        }
    }

    Ok(Forms {
        n_scalar: n,
        mass_rho: tri.mass_rho.into_csr(),
        mass_rho_f: tri.mass_rho_f.into_csr(),
        mass_rho_w: tri.mass_rho_w.into_csr(),
        damp_w: tri.damp_w.into_csr(),
        mass_t: tri.mass_t.into_csr(),
        a_e: tri.a_e.into_csr(),
        a_p: tri.a_p.into_csr(),
        a_t: tri.a_t.into_csr(),
        c_plain: tri.c_plain.into_csr(),
        n_e: tri.n_e.into_csr(),
        n_p: tri.n_p.into_csr(),
        n_t: tri.n_t.into_csr(),
        alpha_diag,
        c1_diag,
        c2_diag,
        cell_offsets: (0..mesh.n_cells())
            .map(|c| space.offset(c))
            .chain(std::iter::once(n))
            .collect(),
    })
}

/// Re-assemble with quadrature order raised by two and flag any relative
/// entry drift beyond 1e-10, which signals an under-integrated basis.
pub fn verify_quadrature(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pen: &PenaltyCoefficients,
) -> Result<()> {
    let base = assemble_forms_detailed(mesh, space, materials, pen, 0, true)?;
    let fine = assemble_forms_detailed(mesh, space, materials, pen, 2, true)?;
    let pairs = [
        (&base.a_e, &fine.a_e),
        (&base.a_p, &fine.a_p),
        (&base.a_t, &fine.a_t),
        (&base.mass_rho, &fine.mass_rho),
        (&base.mass_t, &fine.mass_t),
        (&base.c_plain, &fine.c_plain),
    ];
    for (x, y) in pairs {
        let scale = y.max_abs().max(1e-300);
        let diff = Csr::linear_combination(&[(1.0, x), (-1.0, y)]).max_abs();
        if diff > 1e-10 * scale {
            let l = space.max_degree();
            return Err(Error::QuadratureOrder(2 * l + 2, 2 * l + 4));
        }
    }
    Ok(())
}

struct FormTriplets {
    mass_rho: Triplets,
    mass_rho_f: Triplets,
    mass_rho_w: Triplets,
    damp_w: Triplets,
    mass_t: Triplets,
    a_e: Triplets,
    a_p: Triplets,
    a_t: Triplets,
    c_plain: Triplets,
    n_e: Triplets,
    n_p: Triplets,
    n_t: Triplets,
}

impl FormTriplets {
    fn new(n: usize) -> Self {
        let nv = 2 * n;
        FormTriplets {
            mass_rho: Triplets::new(nv, nv),
            mass_rho_f: Triplets::new(nv, nv),
            mass_rho_w: Triplets::new(nv, nv),
            damp_w: Triplets::new(nv, nv),
            mass_t: Triplets::new(n, n),
            a_e: Triplets::new(nv, nv),
            a_p: Triplets::new(nv, nv),
            a_t: Triplets::new(n, n),
            c_plain: Triplets::new(n, nv),
            n_e: Triplets::new(nv, nv),
            n_p: Triplets::new(nv, nv),
            n_t: Triplets::new(n, n),
        }
    }
}

struct FacePenalties {
    sigma: f64,
    xi: f64,
    zeta: f64,
    varrho: f64,
}

struct FaceSide<'a> {
    m: usize,
    so: usize,
    vo: usize,
    jump: f64,
    avg: f64,
    tab: BasisTable,
    mat: &'a MaterialRegion,
}

fn volume_cell(
    tri: &mut FormTriplets,
    space: &DGSpace,
    cell: usize,
    m: usize,
    w: &[f64],
    tab: &BasisTable,
    mat: &MaterialRegion,
) {
    let nq = w.len();
    let mut mass: DMatrix<f64> = DMatrix::zeros(m, m);
    let mut kxx: DMatrix<f64> = DMatrix::zeros(m, m); // sum w dx_i dx_j
    let mut kxy: DMatrix<f64> = DMatrix::zeros(m, m); // sum w dx_i dy_j
    let mut kyy: DMatrix<f64> = DMatrix::zeros(m, m); // sum w dy_i dy_j
    let mut vdx: DMatrix<f64> = DMatrix::zeros(m, m); // sum w phi_i dx_j
    let mut vdy: DMatrix<f64> = DMatrix::zeros(m, m);
    for q in 0..nq {
        let wq = w[q];
        for i in 0..m {
            let (vi, xi, yi) = (tab.val[(q, i)], tab.dx[(q, i)], tab.dy[(q, i)]);
            for j in 0..m {
                let (vj, xj, yj) = (tab.val[(q, j)], tab.dx[(q, j)], tab.dy[(q, j)]);
                mass[(i, j)] += wq * vi * vj;
                kxx[(i, j)] += wq * xi * xj;
                kxy[(i, j)] += wq * xi * yj;
                kyy[(i, j)] += wq * yi * yj;
                vdx[(i, j)] += wq * vi * xj;
                vdy[(i, j)] += wq * vi * yj;
            }
        }
    }
    let kyx = kxy.transpose();

    let (so, vo) = (space.offset(cell), space.vec_offset(cell));
    let (mu, lam, inv_c0, theta, inv_k) =
        (mat.mu, mat.lambda, 1.0 / mat.c0, mat.theta, 1.0 / mat.k);

    // scalar masses and conduction
    for i in 0..m {
        for j in 0..m {
            let mm = mass[(i, j)];
            tri.mass_t
                .push(so + i, so + j, mat.reduced_thermal_capacity() * mm);
            let grad = kxx[(i, j)] + kyy[(i, j)];
            tri.a_t.push(so + i, so + j, theta * grad);
            tri.n_t.push(so + i, so + j, theta * grad);
            // vector masses: one copy per component block
            for c in 0..2 {
                let (r, s) = (vo + c * m + i, vo + c * m + j);
                tri.mass_rho.push(r, s, mat.rho() * mm);
                tri.mass_rho_f.push(r, s, mat.rho_f * mm);
                tri.mass_rho_w.push(r, s, mat.rho_w() * mm);
                tri.damp_w.push(r, s, inv_k * mm);
            }
        }
    }

    // elastic and storage stiffness, by component block
    for i in 0..m {
        for j in 0..m {
            let strain_xx = 2.0 * mu * kxx[(i, j)] + mu * kyy[(i, j)];
            let strain_xy = mu * kyx[(i, j)]; // mu dy_i dx_j
            let strain_yx = mu * kxy[(i, j)];
            let strain_yy = 2.0 * mu * kyy[(i, j)] + mu * kxx[(i, j)];
            // div-div pattern: d_ci(i) d_cj(j)
            let div_xx = kxx[(i, j)];
            let div_xy = kxy[(i, j)];
            let div_yx = kyx[(i, j)];
            let div_yy = kyy[(i, j)];

            let (rx, ry) = (vo + i, vo + m + i);
            let (cx, cy) = (vo + j, vo + m + j);
            tri.a_e.push(rx, cx, strain_xx + lam * div_xx);
            tri.a_e.push(rx, cy, strain_xy + lam * div_xy);
            tri.a_e.push(ry, cx, strain_yx + lam * div_yx);
            tri.a_e.push(ry, cy, strain_yy + lam * div_yy);
            tri.n_e.push(rx, cx, strain_xx);
            tri.n_e.push(rx, cy, strain_xy);
            tri.n_e.push(ry, cx, strain_yx);
            tri.n_e.push(ry, cy, strain_yy);
            tri.a_p.push(rx, cx, inv_c0 * div_xx);
            tri.a_p.push(rx, cy, inv_c0 * div_xy);
            tri.a_p.push(ry, cx, inv_c0 * div_yx);
            tri.a_p.push(ry, cy, inv_c0 * div_yy);
            tri.n_p.push(rx, cx, inv_c0 * div_xx);
            tri.n_p.push(rx, cy, inv_c0 * div_xy);
            tri.n_p.push(ry, cx, inv_c0 * div_yx);
            tri.n_p.push(ry, cy, inv_c0 * div_yy);
            // (div u, S): row scalar, column vector component
            tri.c_plain.push(so + i, cx, vdx[(i, j)]);
            tri.c_plain.push(so + i, cy, vdy[(i, j)]);
        }
    }
}

fn face_pair(
    tri: &mut FormTriplets,
    a: &FaceSide,
    b: &FaceSide,
    w: &[f64],
    normal: crate::geometry::Vector2,
    pens: &FacePenalties,
) {
    let (ma, mb) = (a.m, b.m);
    let nq = w.len();
    // primitive face integrals between the two sides
    let mut vv: DMatrix<f64> = DMatrix::zeros(ma, mb); // phi_i phi_j
    let mut vgn: DMatrix<f64> = DMatrix::zeros(ma, mb); // phi_i (grad phi_j . n)
    let mut gnv: DMatrix<f64> = DMatrix::zeros(ma, mb); // (grad phi_i . n) phi_j
    let mut vdx: DMatrix<f64> = DMatrix::zeros(ma, mb); // phi_i dx phi_j
    let mut vdy: DMatrix<f64> = DMatrix::zeros(ma, mb);
    let mut dxv: DMatrix<f64> = DMatrix::zeros(ma, mb); // dx phi_i phi_j
    let mut dyv: DMatrix<f64> = DMatrix::zeros(ma, mb);
    for q in 0..nq {
        let wq = w[q];
        for i in 0..ma {
            let (vi, xi, yi) = (a.tab.val[(q, i)], a.tab.dx[(q, i)], a.tab.dy[(q, i)]);
            for j in 0..mb {
                let (vj, xj, yj) = (b.tab.val[(q, j)], b.tab.dx[(q, j)], b.tab.dy[(q, j)]);
                vv[(i, j)] += wq * vi * vj;
                vgn[(i, j)] += wq * vi * (xj * normal.x + yj * normal.y);
                gnv[(i, j)] += wq * (xi * normal.x + yi * normal.y) * vj;
                vdx[(i, j)] += wq * vi * xj;
                vdy[(i, j)] += wq * vi * yj;
                dxv[(i, j)] += wq * xi * vj;
                dyv[(i, j)] += wq * yi * vj;
            }
        }
    }

    let n = [normal.x, normal.y];
    let jj = a.jump * b.jump;
    let trial_w = -b.avg * a.jump; // weight of terms differentiating the trial side
    let test_w = -a.avg * b.jump; // weight of terms differentiating the test side
    let (mu_a, mu_b) = (a.mat.mu, b.mat.mu);
    let (lam_a, lam_b) = (a.mat.lambda, b.mat.lambda);
    let (ic0_a, ic0_b) = (1.0 / a.mat.c0, 1.0 / b.mat.c0);
    let (th_a, th_b) = (a.mat.theta, b.mat.theta);

    for i in 0..ma {
        for j in 0..mb {
            // temperature: consistency, symmetry, penalty
            let t_entry = trial_w * th_b * vgn[(i, j)]
                + test_w * th_a * gnv[(i, j)]
                + pens.varrho * jj * vv[(i, j)];
            tri.a_t.push(a.so + i, b.so + j, t_entry);
            tri.n_t.push(a.so + i, b.so + j, pens.varrho * jj * vv[(i, j)]);

            // coupling: -{S} [u]_n, rows scalar on side a, columns vector on b
            for (cj, ncj) in n.iter().enumerate() {
                tri.c_plain.push(
                    a.so + i,
                    b.vo + cj * mb + j,
                    -a.avg * b.jump * vv[(i, j)] * ncj,
                );
            }

            let vd = [vdx[(i, j)], vdy[(i, j)]];
            let dv = [dxv[(i, j)], dyv[(i, j)]];
            for ci in 0..2 {
                for cj in 0..2 {
                    let row = a.vo + ci * ma + i;
                    let col = b.vo + cj * mb + j;
                    let same = ci == cj;

                    let mut e = 0.0;
                    // -{2 mu eps(u)} : [v]
                    e += trial_w * mu_b * (if same { vgn[(i, j)] } else { 0.0 } + vd[ci] * n[cj]);
                    // -[u] : {2 mu eps(v)}
                    e += test_w * mu_a * (if same { gnv[(i, j)] } else { 0.0 } + dv[cj] * n[ci]);
                    // -{lambda div u}[v]_n and -[u]_n{lambda div v}
                    e += trial_w * lam_b * vd[cj] * n[ci];
                    e += test_w * lam_a * dv[ci] * n[cj];
                    // sigma full jump + xi normal jump
                    let pen_sigma = if same { pens.sigma * jj * vv[(i, j)] } else { 0.0 };
                    let pen_xi = pens.xi * jj * vv[(i, j)] * n[ci] * n[cj];
                    tri.a_e.push(row, col, e + pen_sigma + pen_xi);
                    tri.n_e.push(row, col, pen_sigma);

                    let mut p = 0.0;
                    p += trial_w * ic0_b * vd[cj] * n[ci];
                    p += test_w * ic0_a * dv[ci] * n[cj];
                    let pen_zeta = pens.zeta * jj * vv[(i, j)] * n[ci] * n[cj];
                    tri.a_p.push(row, col, p + pen_zeta);
                    tri.n_p.push(row, col, pen_zeta);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{convergence_test, sandstone, sandstone_stiff, MaterialRegion};
    use crate::mesh::{brick, cartesian, Cell, PolyMesh};
    use crate::space::l2_project_vector;
    use crate::geometry::{Point2, Vector2};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn quadratic(m: &Csr, x: &[f64]) -> f64 {
        let mut y = vec![0.0; m.nrows];
        m.matvec(x, &mut y);
        dot(x, &y)
    }

    fn two_triangles() -> PolyMesh {
        let verts = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let cells = vec![
            Cell { vertices: vec![0, 1, 2], region: 0 },
            Cell { vertices: vec![0, 2, 3], region: 0 },
        ];
        PolyMesh::new(verts, cells).unwrap()
    }

    fn test_material() -> MaterialRegion {
        MaterialRegion {
            mu: 1.3,
            lambda: 2.1,
            c0: 0.5,
            ..convergence_test()
        }
    }

    #[test]
    fn constant_temperature_spans_neumann_kernel() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let map = MaterialMap::single(sandstone());
        let pen = PenaltyCoefficients::default();
        let neumann = assemble_forms_detailed(&mesh, &space, &map, &pen, 0, false).unwrap();
        let mut constant = vec![0.0; space.n_dofs];
        for cell in 0..mesh.n_cells() {
            constant[space.offset(cell)] = mesh.geometry(cell).area.sqrt();
        }
        let mut y = vec![0.0; space.n_dofs];
        neumann.a_t.matvec(&constant, &mut y);
        let scale = neumann.a_t.max_abs();
        assert!(y.iter().all(|v| v.abs() <= 1e-12 * scale));

        // with boundary terms the trace penalty acts on the constant
        let dirichlet = assemble_forms(&mesh, &space, &map, &pen).unwrap();
        dirichlet.a_t.matvec(&constant, &mut y);
        assert!(y.iter().any(|v| v.abs() > 1e-6 * scale));
    }

    #[test]
    fn continuous_linear_field_reproduces_analytic_energy() {
        let mesh = two_triangles();
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let map = MaterialMap::single(test_material());
        let pen = PenaltyCoefficients::default();
        let forms = assemble_forms_detailed(&mesh, &space, &map, &pen, 0, false).unwrap();
        // u = (0.1 + 0.3x - 0.7y, -0.2 + 0.2x + 0.5y): constant strain
        let u = l2_project_vector(
            &mesh,
            &space,
            |p| Vector2::new(0.1 + 0.3 * p.x - 0.7 * p.y, -0.2 + 0.2 * p.x + 0.5 * p.y),
            0,
        )
        .unwrap();
        // 2 mu (b^2 + f^2 + (c+e)^2/2) + lambda (b+f)^2 on the unit square
        let elastic = 2.0 * 1.3 * (0.09 + 0.25 + 0.125) + 2.1 * 0.64;
        assert!((quadratic(&forms.a_e, &u) - elastic).abs() < 1e-11);
        let strain_only = 2.0 * 1.3 * 0.465;
        assert!((quadratic(&forms.n_e, &u) - strain_only).abs() < 1e-11);
        // storage part: (1/c0) (div u)^2 = 2 * 0.64
        assert!((quadratic(&forms.a_p, &u) - 1.28).abs() < 1e-11);
        assert!((quadratic(&forms.n_p, &u) - 1.28).abs() < 1e-11);
    }

    #[test]
    fn assembled_operators_are_symmetric() {
        let mut mesh = brick(3, 2, [0.0, 1.0], [0.0, 1.0]);
        mesh.assign_regions(|c| if c.x < 0.5 { 0 } else { 1 });
        let mut map = MaterialMap::single(sandstone());
        map.regions.insert(1, sandstone_stiff());
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        for (name, m) in [
            ("a_e", &forms.a_e),
            ("a_p", &forms.a_p),
            ("a_t", &forms.a_t),
            ("mass_rho", &forms.mass_rho),
            ("mass_rho_f", &forms.mass_rho_f),
            ("mass_rho_w", &forms.mass_rho_w),
            ("damp_w", &forms.damp_w),
            ("mass_t", &forms.mass_t),
            ("n_e", &forms.n_e),
            ("n_p", &forms.n_p),
            ("n_t", &forms.n_t),
        ] {
            let defect = m.symmetry_defect();
            assert!(
                defect <= 1e-12 * m.max_abs(),
                "{name}: defect {defect} vs scale {}",
                m.max_abs()
            );
        }
    }

    #[test]
    fn raising_quadrature_order_changes_nothing() {
        let mesh = brick(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 3).unwrap();
        let map = MaterialMap::single(convergence_test());
        verify_quadrature(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
    }

    #[test]
    fn divergence_identity_for_continuous_field() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let map = MaterialMap::single(test_material());
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        // continuous quadratic field: volume and boundary terms must cancel
        // against the all-ones test function by the divergence theorem
        let u = l2_project_vector(
            &mesh,
            &space,
            |p| Vector2::new(p.x * p.x - 2.0 * p.x * p.y, 3.0 * p.y * p.y + p.x),
            0,
        )
        .unwrap();
        let mut ones = vec![0.0; space.n_dofs];
        for cell in 0..mesh.n_cells() {
            ones[space.offset(cell)] = mesh.geometry(cell).area.sqrt();
        }
        let mut cu = vec![0.0; space.n_dofs];
        forms.c_plain.matvec(&u, &mut cu);
        assert!(dot(&ones, &cu).abs() < 1e-10);
    }

    #[test]
    fn elastic_rayleigh_quotients_stay_nonnegative() {
        let mesh = cartesian(3, 3, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let map = MaterialMap::single(sandstone());
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        let mut rng = StdRng::seed_from_u64(42);
        let floor = -1e-10 * forms.a_e.max_abs();
        for _ in 0..50 {
            let v: Vec<f64> = (0..2 * space.n_dofs)
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let norm2 = dot(&v, &v);
            assert!(quadratic(&forms.a_e, &v) >= floor * norm2);
            assert!(quadratic(&forms.a_t, &v[..space.n_dofs]) >= floor * norm2);
        }
    }
}

