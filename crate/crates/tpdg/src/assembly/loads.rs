//! Right-hand-side assembly: volume loads and weak Dirichlet boundary data.
//!
//! Boundary conditions are imposed weakly: the matrix keeps its penalty and
//! consistency terms on boundary faces, and nonzero data shows up purely as
//! right-hand-side contributions mirroring those terms. With homogeneous
//! Dirichlet data the load reduces to the plain L2 pairing of the forcing
//! functions. Quadrature rules and basis tables are cached at construction
//! so per-step assembly only evaluates the model closures.

use crate::error::Result;
use crate::geometry::{Point2, Vector2};
use crate::materials::MaterialMap;
use crate::mesh::PolyMesh;
use crate::space::{cell_rule, face_rule, BasisTable, DGSpace, QuadRule};

use super::penalty::{penalty_on_face, PenaltyCoefficients, PenaltyKind};

/// Volume forcing and (optional) boundary data of a linear problem.
///
/// The default implementations describe the homogeneous problem: zero
/// forcing, zero boundary values. Time derivatives of the boundary data feed
/// the damping-side data terms and must stay consistent with `u_bc`/`w_bc`.
pub trait LoadModel {
    fn f(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn g(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn heat(&self, _p: Point2, _t: f64) -> f64 {
        0.0
    }
    fn u_bc(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn w_bc(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn temperature_bc(&self, _p: Point2, _t: f64) -> f64 {
        0.0
    }
    fn u_bc_dot(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn w_bc_dot(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn u_bc_ddot(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    fn w_bc_ddot(&self, _p: Point2, _t: f64) -> Vector2 {
        Vector2::zeros()
    }
    /// Skip the volume quadrature loop entirely when forcing is zero.
    fn has_volume_forcing(&self) -> bool {
        true
    }
    /// Skip the boundary loop when all Dirichlet data is zero.
    fn has_boundary_data(&self) -> bool {
        true
    }
}

/// The homogeneous problem: no forcing, zero Dirichlet values.
pub struct ZeroLoads;

impl LoadModel for ZeroLoads {
    fn has_volume_forcing(&self) -> bool {
        false
    }
    fn has_boundary_data(&self) -> bool {
        false
    }
}

struct CellCache {
    rule: QuadRule,
    tab: BasisTable,
    m: usize,
    so: usize,
    vo: usize,
}

struct BoundaryFaceCache {
    rule: QuadRule,
    tab: BasisTable,
    normal: Vector2,
    m: usize,
    so: usize,
    vo: usize,
    sigma: f64,
    xi: f64,
    zeta: f64,
    varrho: f64,
    mu: f64,
    lambda: f64,
    inv_c0: f64,
    theta: f64,
    alpha: f64,
    c1: f64,
    c2: f64,
    tau: f64,
}

/// Precomputed quadrature/basis data for repeated right-hand-side assembly.
pub struct LoadAssembler {
    n_scalar: usize,
    cells: Vec<CellCache>,
    boundary: Vec<BoundaryFaceCache>,
}

impl LoadAssembler {
    pub fn new(
        mesh: &PolyMesh,
        space: &DGSpace,
        materials: &MaterialMap,
        pen: &PenaltyCoefficients,
    ) -> Result<Self> {
        let mut cells = Vec::with_capacity(mesh.n_cells());
        for cell in 0..mesh.n_cells() {
            let deg = space.degrees[cell];
            let rule = cell_rule(mesh, cell, 2 * deg + 2)?;
            let tab = space.tabulate(cell, &rule.points);
            cells.push(CellCache {
                rule,
                tab,
                m: space.n_local(cell),
                so: space.offset(cell),
                vo: space.vec_offset(cell),
            });
        }
        let mut boundary = Vec::new();
        for face in mesh.boundary_faces().collect::<Vec<_>>() {
            let f = &mesh.faces[face];
            let cell = f.owner;
            let mat = materials.for_cell(mesh, cell)?;
            let deg = space.degrees[cell];
            let (pa, pb) = mesh.face_endpoints(face);
            let rule = face_rule(pa, pb, 2 * deg + 2)?;
            let tab = space.tabulate(cell, &rule.points);
            boundary.push(BoundaryFaceCache {
                rule,
                tab,
                normal: f.normal,
                m: space.n_local(cell),
                so: space.offset(cell),
                vo: space.vec_offset(cell),
                sigma: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Shear)?,
                xi: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Dilatation)?,
                zeta: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Storage)?,
                varrho: penalty_on_face(mesh, space, materials, pen, face, PenaltyKind::Thermal)?,
                mu: mat.mu,
                lambda: mat.lambda,
                inv_c0: 1.0 / mat.c0,
                theta: mat.theta,
                alpha: mat.alpha,
                c1: mat.c1(),
                c2: mat.c2(),
                tau: mat.tau,
            });
        }
        Ok(LoadAssembler {
            n_scalar: space.n_dofs,
            cells,
            boundary,
        })
    }

    pub fn n_total(&self) -> usize {
        5 * self.n_scalar
    }

    /// Assemble the load vector [F; G; H] at time t.
    pub fn assemble(&self, model: &dyn LoadModel, t: f64) -> Vec<f64> {
        let n = self.n_scalar;
        let nv = 2 * n;
        let mut out = vec![0.0; 5 * n];
        let (head, h_block) = out.split_at_mut(2 * nv);
        let (f_block, g_block) = head.split_at_mut(nv);

        if model.has_volume_forcing() {
            for c in &self.cells {
                for q in 0..c.rule.len() {
                    let p = c.rule.points[q];
                    let w = c.rule.weights[q];
                    let fv = model.f(p, t);
                    let gv = model.g(p, t);
                    let hv = model.heat(p, t);
                    for i in 0..c.m {
                        let phi = c.tab.val[(q, i)];
                        f_block[c.vo + i] += w * fv.x * phi;
                        f_block[c.vo + c.m + i] += w * fv.y * phi;
                        g_block[c.vo + i] += w * gv.x * phi;
                        g_block[c.vo + c.m + i] += w * gv.y * phi;
                        h_block[c.so + i] += w * hv * phi;
                    }
                }
            }
        }

        if model.has_boundary_data() {
            for b in &self.boundary {
                let n_vec = b.normal;
                for q in 0..b.rule.len() {
                    let p = b.rule.points[q];
                    let w = b.rule.weights[q];
                    let u_d = model.u_bc(p, t);
                    let w_d = model.w_bc(p, t);
                    let t_d = model.temperature_bc(p, t);
                    let m_d_n = (b.alpha * u_d + w_d).dot(&n_vec);
                    let vel_n = b.c1 * model.u_bc_dot(p, t).dot(&n_vec)
                        + b.c2 * model.w_bc_dot(p, t).dot(&n_vec);
                    let acc_n = if b.tau > 0.0 {
                        b.c1 * model.u_bc_ddot(p, t).dot(&n_vec)
                            + b.c2 * model.w_bc_ddot(p, t).dot(&n_vec)
                    } else {
                        0.0
                    };
                    for i in 0..b.m {
                        let phi = b.tab.val[(q, i)];
                        let gx = b.tab.dx[(q, i)];
                        let gy = b.tab.dy[(q, i)];
                        let grad_n = gx * n_vec.x + gy * n_vec.y;
                        let grad_dot_ud = gx * u_d.x + gy * u_d.y;
                        let d = [gx, gy];
                        let nn = [n_vec.x, n_vec.y];
                        let ud = [u_d.x, u_d.y];
                        for (ci, (&nci, &udci)) in nn.iter().zip(&ud).enumerate() {
                            // test function phi e_ci against the elastic data terms:
                            // -2 mu (eps(v) n) . u_D - lambda div v (u_D.n)
                            //   + sigma u_D . v + xi (u_D.n)(v.n)
                            let eps_term = b.mu * (grad_n * udci + grad_dot_ud * nci);
                            let lam_term = b.lambda * d[ci] * u_d.dot(&n_vec);
                            let pen_term =
                                b.sigma * udci * phi + b.xi * u_d.dot(&n_vec) * phi * nci;
                            // storage data terms against alpha v (u rows) and z (w rows):
                            // -1/c0 div q (m_D.n) + zeta (m_D.n)(q.n)
                            let stor = -b.inv_c0 * d[ci] * m_d_n + b.zeta * m_d_n * phi * nci;
                            f_block[b.vo + ci * b.m + i] +=
                                w * (-eps_term - lam_term + pen_term + b.alpha * stor);
                            g_block[b.vo + ci * b.m + i] += w * stor;
                        }
                        // thermal data: T_D (-theta grad S . n + varrho S);
                        // damping data: -(c1 u_dot.n + c2 w_dot.n) S, same with
                        // accelerations scaled by tau
                        h_block[b.so + i] += w
                            * (t_d * (-b.theta * grad_n + b.varrho * phi)
                                - (vel_n + b.tau * acc_n) * phi);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{sandstone, MaterialMap};
    use crate::mesh::cartesian;
    use crate::space::DGSpace;

    struct ConstantBodyForce;
    impl LoadModel for ConstantBodyForce {
        fn f(&self, _p: Point2, _t: f64) -> Vector2 {
            Vector2::new(1.0, 0.0)
        }
        fn has_boundary_data(&self) -> bool {
            false
        }
    }

    fn setup() -> (PolyMesh, DGSpace, LoadAssembler) {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let map = MaterialMap::single(sandstone());
        let asm = LoadAssembler::new(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        (mesh, space, asm)
    }

    #[test]
    fn zero_model_gives_zero_vector() {
        let (_, _, asm) = setup();
        let v = asm.assemble(&ZeroLoads, 0.3);
        assert!(v.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn constant_force_pairs_with_constant_mode_only() {
        let (mesh, space, asm) = setup();
        let v = asm.assemble(&ConstantBodyForce, 0.0);
        for cell in 0..mesh.n_cells() {
            let m = space.n_local(cell);
            let vo = space.vec_offset(cell);
            let area = mesh.geometry(cell).area;
            // x block: first (constant) mode integrates to sqrt(area)
            assert!((v[vo] - area.sqrt()).abs() < 1e-12);
            for i in 1..m {
                assert!(v[vo + i].abs() < 1e-12);
            }
            // y block and the w/T segments stay zero
            for i in 0..m {
                assert_eq!(v[vo + m + i], 0.0);
            }
        }
        let n = space.n_dofs;
        assert!(v[2 * n..].iter().all(|&x| x == 0.0));
    }
}
