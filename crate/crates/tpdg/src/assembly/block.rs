//! Block system for the second-order-in-time formulation.
//!
//! Unknown layout is [U; W; T] with U and W on the vector space (2n dofs
//! each) and T on the scalar space (n dofs). The three composed matrices
//! follow the mass / damping / stiffness split
//!
//!   mass      [[rho M,   rho_f M, 0      ]     damping [[0,  0,  0   ]
//!              [rho_f M, rho_w M, 0      ]              [0,  B,  0   ]
//!              [tau C1,  tau C2,  tau M_T]]             [C1, C2, M_T ]]
//!
//!   stiffness [[A_e + a A_p a, A_p a, -C1']
//!              [a A_p,         A_p,   -C2']
//!              [0,             0,     A_T ]]
//!
//! where `a` is the diagonal of per-cell Biot alphas and C1, C2 are the
//! divergence coupling row-scaled by the two energy-equation weights. With
//! tau = 0 the temperature row of the mass block vanishes and the system
//! degenerates to first order in T; the time integrator switches to the
//! partitioned Crank-Nicolson path in that case.

use crate::error::{Error, Result};
use crate::sparse::Csr;

use super::forms::Forms;

#[derive(Debug, Clone)]
pub struct BlockSystem {
    pub n_scalar: usize,
    pub n_vec: usize,
    pub n_total: usize,
    pub tau: f64,
    pub forms: Forms,
    /// Stiffness block pairing test u with trial u: A_e + Da' A_p Da.
    pub kuu: Csr,
    /// Stiffness block pairing test u with trial w: Da' A_p.
    pub kuw: Csr,
    /// Stiffness block pairing test w with trial u: A_p Da.
    pub kwu: Csr,
    /// Stiffness block pairing test w with trial w: A_p.
    pub kww: Csr,
    /// Coupling with weight alpha b0/c0 + beta (scalar rows, vector columns).
    pub c1: Csr,
    /// Coupling with weight b0/c0.
    pub c2: Csr,
    pub c1_t: Csr,
    pub c2_t: Csr,
    pub mass: Csr,
    pub damping: Csr,
    pub stiffness: Csr,
}

pub fn build_block_system(forms: Forms, tau: f64) -> Result<BlockSystem> {
    if tau < 0.0 {
        return Err(Error::Config(format!("tau must be non-negative, got {tau}")));
    }
    let n = forms.n_scalar;
    let nv = 2 * n;

    let ap_a = forms.a_p.scale_cols(&forms.alpha_diag);
    let kuu = Csr::linear_combination(&[
        (1.0, &forms.a_e),
        (1.0, &ap_a.scale_rows(&forms.alpha_diag)),
    ]);
    let kuw = forms.a_p.scale_rows(&forms.alpha_diag);
    let kwu = ap_a;
    let kww = forms.a_p.clone();

    let c1 = forms.c_plain.scale_rows(&forms.c1_diag);
    let c2 = forms.c_plain.scale_rows(&forms.c2_diag);
    let c1_t = c1.transpose();
    let c2_t = c2.transpose();

    let sizes = [nv, nv, n];
    let mass = Csr::compose_blocks(
        &sizes,
        &sizes,
        &[
            vec![Some((1.0, &forms.mass_rho)), Some((1.0, &forms.mass_rho_f)), None],
            vec![Some((1.0, &forms.mass_rho_f)), Some((1.0, &forms.mass_rho_w)), None],
            vec![Some((tau, &c1)), Some((tau, &c2)), Some((tau, &forms.mass_t))],
        ],
    );
    let damping = Csr::compose_blocks(
        &sizes,
        &sizes,
        &[
            vec![None, None, None],
            vec![None, Some((1.0, &forms.damp_w)), None],
            vec![Some((1.0, &c1)), Some((1.0, &c2)), Some((1.0, &forms.mass_t))],
        ],
    );
    let stiffness = Csr::compose_blocks(
        &sizes,
        &sizes,
        &[
            vec![Some((1.0, &kuu)), Some((1.0, &kuw)), Some((-1.0, &c1_t))],
            vec![Some((1.0, &kwu)), Some((1.0, &kww)), Some((-1.0, &c2_t))],
            vec![None, None, Some((1.0, &forms.a_t))],
        ],
    );

    Ok(BlockSystem {
        n_scalar: n,
        n_vec: nv,
        n_total: 2 * nv + n,
        tau,
        forms,
        kuu,
        kuw,
        kwu,
        kww,
        c1,
        c2,
        c1_t,
        c2_t,
        mass,
        damping,
        stiffness,
    })
}

impl BlockSystem {
    /// True when tau = 0 and the temperature equation is first order.
    pub fn first_order_temperature(&self) -> bool {
        self.tau == 0.0
    }

    /// Split a full state vector into (u, w, t) slices.
    pub fn split<'a>(&self, x: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64]) {
        let nv = self.n_vec;
        (&x[..nv], &x[nv..2 * nv], &x[2 * nv..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::forms::assemble_forms;
    use crate::assembly::penalty::PenaltyCoefficients;
    use crate::materials::{convergence_test, sandstone, MaterialMap};
    use crate::mesh::cartesian;
    use crate::space::DGSpace;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn small_system(tau: f64) -> BlockSystem {
        let mesh = cartesian(3, 3, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let map = MaterialMap::single(sandstone());
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        build_block_system(forms, tau).unwrap()
    }

    #[test]
    fn zero_tau_clears_temperature_mass_row() {
        let sys = small_system(0.0);
        assert!(sys.first_order_temperature());
        for row in 2 * sys.n_vec..sys.n_total {
            assert_eq!(sys.mass.row(row).0.len(), 0, "row {row} not empty");
        }
        // tau > 0 keeps them
        let sys = small_system(1.5e-2);
        let nonzero = (2 * sys.n_vec..sys.n_total)
            .filter(|&r| !sys.mass.row(r).0.is_empty())
            .count();
        assert_eq!(nonzero, sys.n_scalar);
    }

    #[test]
    fn damping_and_stiffness_coupling_are_transposes() {
        let sys = small_system(1.5e-2);
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let u: Vec<f64> = (0..sys.n_vec).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let w: Vec<f64> = (0..sys.n_vec).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let t: Vec<f64> = (0..sys.n_scalar).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut c1u = vec![0.0; sys.n_scalar];
            sys.c1.matvec(&u, &mut c1u);
            let mut c2w = vec![0.0; sys.n_scalar];
            sys.c2.matvec(&w, &mut c2w);
            let from_damping: f64 = t
                .iter()
                .zip(c1u.iter().zip(&c2w))
                .map(|(ti, (a, b))| ti * (a + b))
                .sum();
            let mut c1t = vec![0.0; sys.n_vec];
            sys.c1_t.matvec(&t, &mut c1t);
            let mut c2t = vec![0.0; sys.n_vec];
            sys.c2_t.matvec(&t, &mut c2t);
            let from_stiffness: f64 = u.iter().zip(&c1t).map(|(a, b)| a * b).sum::<f64>()
                + w.iter().zip(&c2t).map(|(a, b)| a * b).sum::<f64>();
            let scale = from_damping.abs().max(1.0);
            assert!((from_damping - from_stiffness).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn unit_alpha_collapses_uu_block_to_elastic_plus_storage() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        let map = MaterialMap::single(convergence_test()); // alpha = 1
        let forms = assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        let a_e = forms.a_e.clone();
        let sys = build_block_system(forms, 0.0).unwrap();
        let diff = Csr::linear_combination(&[(1.0, &sys.kuu), (-1.0, &sys.kuw), (-1.0, &a_e)]);
        assert!(diff.max_abs() <= 1e-12 * sys.kuu.max_abs());
    }

    #[test]
    fn inertia_block_is_positive_definite_for_sandstone() {
        // requires rho rho_w > rho_f^2, which holds: 2155 * 6666.7 > 1000^2
        let sys = small_system(1.5e-2);
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..20 {
            let x: Vec<f64> = (0..2 * sys.n_vec)
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let mut y = vec![0.0; 2 * sys.n_vec];
            // upper-left 2x2 of the mass block acts on [u; w]
            let (u, w) = x.split_at(sys.n_vec);
            let mut tmp = vec![0.0; sys.n_vec];
            sys.forms.mass_rho.matvec(u, &mut tmp);
            y[..sys.n_vec].copy_from_slice(&tmp);
            sys.forms.mass_rho_f.matvec(w, &mut tmp);
            for (a, b) in y[..sys.n_vec].iter_mut().zip(&tmp) {
                *a += b;
            }
            sys.forms.mass_rho_f.matvec(u, &mut tmp);
            y[sys.n_vec..].copy_from_slice(&tmp);
            sys.forms.mass_rho_w.matvec(w, &mut tmp);
            for (a, b) in y[sys.n_vec..].iter_mut().zip(&tmp) {
                *a += b;
            }
            let quad: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            assert!(quad > 0.0);
        }
    }

    #[test]
    fn negative_tau_is_rejected() {
        let mesh = cartesian(1, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let map = MaterialMap::single(sandstone());
        let forms = assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        assert!(build_block_system(forms, -0.1).is_err());
    }
}
