//! Newmark time integration for the coupled wave system.
//!
//! The composed system `A x'' + B x' + C x = F(t)` advances in acceleration
//! form: each step solves
//!
//! ```text
//! (A + gamma dt B + beta dt^2 C) a_next = F_next - B y_pred - C x_pred
//! ```
//!
//! with the predictors `x_pred = x + dt y + (1/2 - beta) dt^2 a` and
//! `y_pred = y + (1 - gamma) dt a`, then updates positions and velocities
//! from the new acceleration. The step matrix is constant in time, so it is
//! factorized once per run.
//!
//! A zero thermal relaxation time makes the temperature equation first
//! order and the composed mass singular. That case keeps Newmark for the
//! displacement and filtration rows but discretizes the temperature row
//! with the trapezoidal rule, solving for the two accelerations and the
//! end-of-step temperature together so the coupling stays implicit. With
//! the default gamma = 1/2, beta = 1/4 parameters the two paths produce
//! the same trajectory in the vanishing-relaxation limit whenever the
//! initial temperature rate satisfies the heat balance.

pub mod solver;

use std::ops::Range;

use crate::assembly::{BlockSystem, Forms};
use crate::error::{Error, Result};
use crate::sparse::Csr;
pub use solver::{LinearSolver, SolverKind};

/// Step size and the two Newmark quadrature parameters.
#[derive(Clone, Copy, Debug)]
pub struct NewmarkParams {
    pub dt: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl NewmarkParams {
    /// Average-acceleration scheme: beta 1/4, gamma 1/2, unconditionally
    /// stable and second-order accurate.
    pub fn average_acceleration(dt: f64) -> Self {
        NewmarkParams {
            dt,
            beta: 0.25,
            gamma: 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!("time step {} must be positive", self.dt)));
        }
        if !(0.0..=0.5).contains(&self.beta) || !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::Config(format!(
                "Newmark parameters beta {} gamma {} outside [0, 1/2] x [0, 1]",
                self.beta, self.gamma
            )));
        }
        Ok(())
    }
}

/// Solution snapshot: positions, velocities and accelerations at time `t`.
///
/// All three vectors use the composed layout (displacement block, filtration
/// block, temperature block). When the temperature equation is first order
/// the acceleration slot of the temperature stays zero and its velocity slot
/// holds the rate recovered from the heat balance.
#[derive(Clone, Debug)]
pub struct TimeState {
    pub t: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub a: Vec<f64>,
}

/// How the step systems are solved.
pub enum SolverChoice<'p> {
    /// Sparse LU, factorized once.
    Direct,
    /// BiCGStab preconditioned by dense solves of the given diagonal blocks.
    BiCgStab {
        partition: &'p [Range<usize>],
        tol: f64,
        max_iter: usize,
    },
}

fn build_solver(matrix: &Csr, choice: &SolverChoice) -> Result<LinearSolver> {
    match choice {
        SolverChoice::Direct => LinearSolver::direct(matrix),
        SolverChoice::BiCgStab {
            partition,
            tol,
            max_iter,
        } => LinearSolver::bicgstab(matrix, partition, *tol, *max_iter),
    }
}

/// Diagonal blocks of the composed system grouped by cell and field, the
/// natural partition for the block-Jacobi preconditioner.
pub fn natural_partition(forms: &Forms) -> Vec<Range<usize>> {
    let nv = 2 * forms.n_scalar;
    let mut out = Vec::new();
    for shift in [0, nv] {
        for w in forms.cell_offsets.windows(2) {
            out.push(shift + 2 * w[0]..shift + 2 * w[1]);
        }
    }
    for w in forms.cell_offsets.windows(2) {
        out.push(2 * nv + w[0]..2 * nv + w[1]);
    }
    out
}

/// Newmark integrator for a general second-order system.
pub struct Newmark<'a> {
    mass: &'a Csr,
    damping: &'a Csr,
    stiffness: &'a Csr,
    params: NewmarkParams,
    step_solver: LinearSolver,
}

impl<'a> Newmark<'a> {
    pub fn new(
        mass: &'a Csr,
        damping: &'a Csr,
        stiffness: &'a Csr,
        params: NewmarkParams,
        choice: &SolverChoice,
    ) -> Result<Self> {
        params.validate()?;
        let effective = Csr::linear_combination(&[
            (1.0, mass),
            (params.gamma * params.dt, damping),
            (params.beta * params.dt * params.dt, stiffness),
        ]);
        Ok(Newmark {
            mass,
            damping,
            stiffness,
            params,
            step_solver: build_solver(&effective, choice)?,
        })
    }

    /// Completes the initial data with the acceleration that satisfies the
    /// equation of motion at time zero.
    pub fn initial_state(&self, x0: Vec<f64>, y0: Vec<f64>, f0: &[f64]) -> Result<TimeState> {
        let mut rhs = f0.to_vec();
        self.damping.matvec_add(-1.0, &y0, &mut rhs);
        self.stiffness.matvec_add(-1.0, &x0, &mut rhs);
        let a = LinearSolver::direct(self.mass)?.solve(&rhs)?;
        Ok(TimeState { t: 0.0, x: x0, y: y0, a })
    }

    /// Advances one step given the load vector at the new time level.
    pub fn step(&self, state: &mut TimeState, f_next: &[f64]) -> Result<()> {
        let NewmarkParams { dt, beta, gamma } = self.params;
        let n = state.x.len();
        let mut xp = vec![0.0; n];
        let mut yp = vec![0.0; n];
        for i in 0..n {
            xp[i] = state.x[i] + dt * state.y[i] + (0.5 - beta) * dt * dt * state.a[i];
            yp[i] = state.y[i] + (1.0 - gamma) * dt * state.a[i];
        }
        let mut rhs = f_next.to_vec();
        self.damping.matvec_add(-1.0, &yp, &mut rhs);
        self.stiffness.matvec_add(-1.0, &xp, &mut rhs);
        let a_next = self.step_solver.solve(&rhs)?;
        for i in 0..n {
            state.x[i] = xp[i] + beta * dt * dt * a_next[i];
            state.y[i] = yp[i] + gamma * dt * a_next[i];
        }
        state.a = a_next;
        state.t += dt;
        Ok(())
    }
}

/// Newmark for displacement and filtration combined with a trapezoidal
/// temperature row; used when the thermal relaxation time is zero.
pub struct SplitNewmark<'a> {
    system: &'a BlockSystem,
    params: NewmarkParams,
    step_solver: LinearSolver,
    thermal_mass: LinearSolver,
}

impl<'a> SplitNewmark<'a> {
    pub fn new(
        system: &'a BlockSystem,
        params: NewmarkParams,
        choice: &SolverChoice,
    ) -> Result<Self> {
        params.validate()?;
        let f = &system.forms;
        let (n, nv) = (system.n_scalar, system.n_vec);
        let NewmarkParams { dt, beta, gamma } = params;
        let bdt2 = beta * dt * dt;

        let b00 = Csr::linear_combination(&[(1.0, &f.mass_rho), (bdt2, &system.kuu)]);
        let b01 = Csr::linear_combination(&[(1.0, &f.mass_rho_f), (bdt2, &system.kuw)]);
        let b10 = Csr::linear_combination(&[(1.0, &f.mass_rho_f), (bdt2, &system.kwu)]);
        let b11 = Csr::linear_combination(&[
            (1.0, &f.mass_rho_w),
            (gamma * dt, &f.damp_w),
            (bdt2, &system.kww),
        ]);
        let b22 = Csr::linear_combination(&[(1.0 / dt, &f.mass_t), (0.5, &f.a_t)]);
        let half_gdt = 0.5 * gamma * dt;
        let matrix = Csr::compose_blocks(
            &[nv, nv, n],
            &[nv, nv, n],
            &[
                vec![
                    Some((1.0, &b00)),
                    Some((1.0, &b01)),
                    Some((-1.0, &system.c1_t)),
                ],
                vec![
                    Some((1.0, &b10)),
                    Some((1.0, &b11)),
                    Some((-1.0, &system.c2_t)),
                ],
                vec![
                    Some((half_gdt, &system.c1)),
                    Some((half_gdt, &system.c2)),
                    Some((1.0, &b22)),
                ],
            ],
        );
        Ok(SplitNewmark {
            system,
            params,
            step_solver: build_solver(&matrix, choice)?,
            thermal_mass: LinearSolver::direct(&f.mass_t)?,
        })
    }

    /// The temperature rate that satisfies the heat balance for the given
    /// state and heat load.
    fn consistent_rate(&self, x: &[f64], y: &[f64], f: &[f64]) -> Result<Vec<f64>> {
        let s = self.system;
        let nv = s.n_vec;
        let mut rhs = f[2 * nv..].to_vec();
        s.forms.a_t.matvec_add(-1.0, &x[2 * nv..], &mut rhs);
        s.c1.matvec_add(-1.0, &y[..nv], &mut rhs);
        s.c2.matvec_add(-1.0, &y[nv..2 * nv], &mut rhs);
        self.thermal_mass.solve(&rhs)
    }

    /// Completes the initial data: displacement and filtration accelerations
    /// from their momentum balances, and the temperature rate slot from the
    /// heat balance (any passed value there is replaced).
    pub fn initial_state(&self, x0: Vec<f64>, mut y0: Vec<f64>, f0: &[f64]) -> Result<TimeState> {
        let s = self.system;
        let f = &s.forms;
        let nv = s.n_vec;
        let uw_mass = Csr::compose_blocks(
            &[nv, nv],
            &[nv, nv],
            &[
                vec![Some((1.0, &f.mass_rho)), Some((1.0, &f.mass_rho_f))],
                vec![Some((1.0, &f.mass_rho_f)), Some((1.0, &f.mass_rho_w))],
            ],
        );
        let (xu, xw, xt) = (&x0[..nv], &x0[nv..2 * nv], &x0[2 * nv..]);
        let mut rhs = f0[..2 * nv].to_vec();
        s.kuu.matvec_add(-1.0, xu, &mut rhs[..nv]);
        s.kuw.matvec_add(-1.0, xw, &mut rhs[..nv]);
        s.c1_t.matvec_add(1.0, xt, &mut rhs[..nv]);
        f.damp_w.matvec_add(-1.0, &y0[nv..2 * nv], &mut rhs[nv..]);
        s.kwu.matvec_add(-1.0, xu, &mut rhs[nv..]);
        s.kww.matvec_add(-1.0, xw, &mut rhs[nv..]);
        s.c2_t.matvec_add(1.0, xt, &mut rhs[nv..]);
        let a_uw = LinearSolver::direct(&uw_mass)?.solve(&rhs)?;

        let mut a = vec![0.0; s.n_total];
        a[..2 * nv].copy_from_slice(&a_uw);
        let rate = self.consistent_rate(&x0, &y0, f0)?;
        y0[2 * nv..].copy_from_slice(&rate);
        Ok(TimeState { t: 0.0, x: x0, y: y0, a })
    }

    /// Advances one step given the load vectors at both time levels (the
    /// trapezoidal temperature row averages the heat source).
    pub fn step(&self, state: &mut TimeState, f_prev: &[f64], f_next: &[f64]) -> Result<()> {
        let NewmarkParams { dt, beta, gamma } = self.params;
        let s = self.system;
        let f = &s.forms;
        let (n, nv) = (s.n_scalar, s.n_vec);

        // displacement and filtration predictors
        let mut xp = vec![0.0; 2 * nv];
        let mut yp = vec![0.0; 2 * nv];
        for i in 0..2 * nv {
            xp[i] = state.x[i] + dt * state.y[i] + (0.5 - beta) * dt * dt * state.a[i];
            yp[i] = state.y[i] + (1.0 - gamma) * dt * state.a[i];
        }

        let mut rhs = vec![0.0; 2 * nv + n];
        rhs[..2 * nv].copy_from_slice(&f_next[..2 * nv]);
        s.kuu.matvec_add(-1.0, &xp[..nv], &mut rhs[..nv]);
        s.kuw.matvec_add(-1.0, &xp[nv..], &mut rhs[..nv]);
        s.kwu.matvec_add(-1.0, &xp[..nv], &mut rhs[nv..2 * nv]);
        s.kww.matvec_add(-1.0, &xp[nv..], &mut rhs[nv..2 * nv]);
        f.damp_w.matvec_add(-1.0, &yp[nv..], &mut rhs[nv..2 * nv]);

        // trapezoidal heat row: averaged source, stored temperature, and the
        // velocity averages using the predictor for the unknown end level
        for i in 0..n {
            rhs[2 * nv + i] = 0.5 * (f_prev[2 * nv + i] + f_next[2 * nv + i]);
        }
        f.mass_t
            .matvec_add(1.0 / dt, &state.x[2 * nv..], &mut rhs[2 * nv..]);
        f.a_t.matvec_add(-0.5, &state.x[2 * nv..], &mut rhs[2 * nv..]);
        let mut vel_sum = vec![0.0; nv];
        for i in 0..nv {
            vel_sum[i] = state.y[i] + yp[i];
        }
        s.c1.matvec_add(-0.5, &vel_sum, &mut rhs[2 * nv..]);
        for i in 0..nv {
            vel_sum[i] = state.y[nv + i] + yp[nv + i];
        }
        s.c2.matvec_add(-0.5, &vel_sum, &mut rhs[2 * nv..]);

        let sol = self.step_solver.solve(&rhs)?;
        for i in 0..2 * nv {
            state.x[i] = xp[i] + beta * dt * dt * sol[i];
            state.y[i] = yp[i] + gamma * dt * sol[i];
            state.a[i] = sol[i];
        }
        state.x[2 * nv..].copy_from_slice(&sol[2 * nv..]);
        state.t += dt;
        let rate = self.consistent_rate(&state.x, &state.y, f_next)?;
        state.y[2 * nv..].copy_from_slice(&rate);
        Ok(())
    }
}

/// The scheme matching a composed system's relaxation time.
pub enum Integrator<'a> {
    Full(Newmark<'a>),
    Split(SplitNewmark<'a>),
}

impl<'a> Integrator<'a> {
    /// Picks the full Newmark scheme or the split temperature scheme based
    /// on the system's relaxation time, with the requested solver backend.
    pub fn for_system(
        system: &'a BlockSystem,
        params: NewmarkParams,
        kind: SolverKind,
    ) -> Result<Self> {
        let partition;
        let choice = match kind {
            SolverKind::Direct => SolverChoice::Direct,
            SolverKind::BiCgStab => {
                partition = natural_partition(&system.forms);
                SolverChoice::BiCgStab {
                    partition: &partition,
                    tol: 1e-10,
                    max_iter: 2000,
                }
            }
        };
        if system.first_order_temperature() {
            Ok(Integrator::Split(SplitNewmark::new(system, params, &choice)?))
        } else {
            Ok(Integrator::Full(Newmark::new(
                &system.mass,
                &system.damping,
                &system.stiffness,
                params,
                &choice,
            )?))
        }
    }

    pub fn params(&self) -> NewmarkParams {
        match self {
            Integrator::Full(s) => s.params,
            Integrator::Split(s) => s.params,
        }
    }

    pub fn initial_state(&self, x0: Vec<f64>, y0: Vec<f64>, f0: &[f64]) -> Result<TimeState> {
        match self {
            Integrator::Full(s) => s.initial_state(x0, y0, f0),
            Integrator::Split(s) => s.initial_state(x0, y0, f0),
        }
    }

    pub fn step(&self, state: &mut TimeState, f_prev: &[f64], f_next: &[f64]) -> Result<()> {
        match self {
            Integrator::Full(s) => s.step(state, f_next),
            Integrator::Split(s) => s.step(state, f_prev, f_next),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{assemble_forms, build_block_system, PenaltyCoefficients};
    use crate::materials::{convergence_test, MaterialMap, MaterialRegion};
    use crate::mesh::cartesian;
    use crate::space::DGSpace;
    use crate::sparse::Triplets;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn scalar(v: f64) -> Csr {
        let mut t = Triplets::new(1, 1);
        t.push(0, 0, v);
        t.into_csr()
    }

    fn oscillator_error(omega: f64, dt: f64, t_final: f64) -> f64 {
        let mass = scalar(1.0);
        let damping = Csr::zeros(1, 1);
        let stiffness = scalar(omega * omega);
        let params = NewmarkParams::average_acceleration(dt);
        let nm = Newmark::new(&mass, &damping, &stiffness, params, &SolverChoice::Direct).unwrap();
        let mut state = nm.initial_state(vec![1.0], vec![0.0], &[0.0]).unwrap();
        let steps = (t_final / dt).round() as usize;
        let mut worst = 0.0f64;
        for _ in 0..steps {
            nm.step(&mut state, &[0.0]).unwrap();
            worst = worst.max((state.x[0] - (omega * state.t).cos()).abs());
        }
        worst
    }

    #[test]
    fn oscillator_converges_at_second_order() {
        let omega = 2.0 * std::f64::consts::PI;
        let coarse = oscillator_error(omega, 2e-3, 0.5);
        let fine = oscillator_error(omega, 1e-3, 0.5);
        let rate = (coarse / fine).log2();
        assert!(coarse < 5e-3, "coarse error {coarse}");
        assert!((1.9..=2.1).contains(&rate), "rate {rate}");
    }

    #[test]
    fn undamped_oscillator_conserves_energy() {
        let omega = 3.0;
        let mass = scalar(1.0);
        let damping = Csr::zeros(1, 1);
        let stiffness = scalar(omega * omega);
        let params = NewmarkParams::average_acceleration(1e-3);
        let nm = Newmark::new(&mass, &damping, &stiffness, params, &SolverChoice::Direct).unwrap();
        let mut state = nm.initial_state(vec![1.0], vec![0.5], &[0.0]).unwrap();
        let energy =
            |s: &TimeState| 0.5 * s.y[0] * s.y[0] + 0.5 * omega * omega * s.x[0] * s.x[0];
        let e0 = energy(&state);
        for _ in 0..1000 {
            nm.step(&mut state, &[0.0]).unwrap();
            assert!((energy(&state) - e0).abs() <= 1e-10 * e0);
        }
    }

    #[test]
    fn damping_dissipates_oscillator_energy() {
        let mass = scalar(1.0);
        let damping = scalar(0.3);
        let stiffness = scalar(4.0);
        let params = NewmarkParams::average_acceleration(1e-2);
        let nm = Newmark::new(&mass, &damping, &stiffness, params, &SolverChoice::Direct).unwrap();
        let mut state = nm.initial_state(vec![1.0], vec![0.0], &[0.0]).unwrap();
        let energy = |s: &TimeState| 0.5 * s.y[0] * s.y[0] + 2.0 * s.x[0] * s.x[0];
        let mut last = energy(&state);
        for _ in 0..200 {
            nm.step(&mut state, &[0.0]).unwrap();
            let e = energy(&state);
            assert!(e <= last + 1e-12);
            last = e;
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(NewmarkParams::average_acceleration(0.0).validate().is_err());
        assert!(NewmarkParams { dt: 1e-3, beta: 0.7, gamma: 0.5 }.validate().is_err());
        assert!(NewmarkParams::average_acceleration(1e-3).validate().is_ok());
    }

    /// Composed system on a small mesh with a consistent initial temperature
    /// rate: the split scheme and the full scheme with a vanishing relaxation
    /// time must produce the same trajectory.
    #[test]
    fn split_scheme_matches_vanishing_relaxation_limit() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let map = MaterialMap::single(convergence_test());
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        let n_total = 5 * space.n_dofs;

        let mut rng = StdRng::seed_from_u64(21);
        let x0: Vec<f64> = (0..n_total).map(|_| rng.gen_range(-1e-3..1e-3)).collect();
        let y0: Vec<f64> = (0..n_total).map(|_| rng.gen_range(-1e-3..1e-3)).collect();
        let zero = vec![0.0; n_total];

        let params = NewmarkParams::average_acceleration(1e-4);
        let split_sys = build_block_system(forms.clone(), 0.0).unwrap();
        let split = Integrator::for_system(&split_sys, params, SolverKind::Direct).unwrap();
        // initial_state replaces the temperature rate with the consistent one
        let mut split_state = split.initial_state(x0.clone(), y0.clone(), &zero).unwrap();
        let full_sys = build_block_system(forms, 1e-12).unwrap();
        let full = Integrator::for_system(&full_sys, params, SolverKind::Direct).unwrap();
        let mut full_state = full
            .initial_state(x0, split_state.y.clone(), &zero)
            .unwrap();

        for _ in 0..20 {
            split.step(&mut split_state, &zero, &zero).unwrap();
            full.step(&mut full_state, &zero, &zero).unwrap();
        }
        let scale = split_state
            .x
            .iter()
            .chain(&split_state.y)
            .fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..n_total {
            assert!(
                (split_state.x[i] - full_state.x[i]).abs() <= 1e-6 * scale,
                "x[{i}]: {} vs {}",
                split_state.x[i],
                full_state.x[i]
            );
        }
        let nv = 2 * split_sys.n_scalar;
        for i in 0..2 * nv {
            assert!((split_state.y[i] - full_state.y[i]).abs() <= 1e-6 * scale);
        }
    }

    /// With zero thermo-mechanical coupling the temperature row reduces to
    /// the scalar trapezoidal recurrence, checked to roundoff.
    #[test]
    fn decoupled_temperature_follows_trapezoidal_recurrence() {
        let mesh = cartesian(1, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 0).unwrap();
        let decoupled = MaterialRegion {
            b0: 0.0,
            beta: 0.0,
            ..convergence_test()
        };
        let map = MaterialMap::single(decoupled);
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        let m = forms.mass_t.get(0, 0);
        let a = forms.a_t.get(0, 0);
        let system = build_block_system(forms, 0.0).unwrap();
        let dt = 1e-2;
        let integ =
            Integrator::for_system(&system, NewmarkParams::average_acceleration(dt), SolverKind::Direct)
                .unwrap();
        let mut x0 = vec![0.0; 5];
        x0[4] = 1.0;
        let zero = vec![0.0; 5];
        let mut state = integ.initial_state(x0, zero.clone(), &zero).unwrap();
        let ratio = (m / dt - 0.5 * a) / (m / dt + 0.5 * a);
        let mut expected = 1.0;
        for _ in 0..20 {
            integ.step(&mut state, &zero, &zero).unwrap();
            expected *= ratio;
            assert!((state.x[4] - expected).abs() <= 1e-12 * expected.abs());
            for i in 0..4 {
                assert!(state.x[i].abs() <= 1e-14);
            }
        }
    }

    #[test]
    fn bicgstab_backend_reproduces_direct_trajectory() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let map = MaterialMap::single(convergence_test());
        let forms =
            assemble_forms(&mesh, &space, &map, &PenaltyCoefficients::default()).unwrap();
        let system = build_block_system(forms, 0.01).unwrap();
        let n_total = system.n_total;
        let params = NewmarkParams::average_acceleration(1e-3);

        let mut rng = StdRng::seed_from_u64(5);
        let x0: Vec<f64> = (0..n_total).map(|_| rng.gen_range(-1e-3..1e-3)).collect();
        let zero = vec![0.0; n_total];

        let mut states = Vec::new();
        for kind in [SolverKind::Direct, SolverKind::BiCgStab] {
            let integ = Integrator::for_system(&system, params, kind).unwrap();
            let mut state = integ.initial_state(x0.clone(), zero.clone(), &zero).unwrap();
            for _ in 0..5 {
                integ.step(&mut state, &zero, &zero).unwrap();
            }
            states.push(state);
        }
        let scale = states[0].x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..n_total {
            assert!((states[0].x[i] - states[1].x[i]).abs() <= 1e-7 * scale);
        }
    }
}
