//! Discrete energy functionals of the coupled system.
//!
//! Two closely related quantities are provided. `lyapunov_energy` is the
//! functional the unforced scheme provably does not increase: kinetic energy
//! of the displacement pair, thermal mass, elastic strain energy through the
//! full bilinear form `A_e`, and storage energy of `alpha u + w` through
//! `A_p`. With average-acceleration parameters the stepping is algebraically
//! the trapezoidal rule on the first-order form, so this quantity decays
//! exactly by the drag and conduction dissipation, up to solver roundoff.
//!
//! `energy_norm` is the corresponding norm built from the dG norm Gram
//! matrices instead of the stiffness forms (the jump-penalty route); it
//! additionally includes the drag mass of the filtration rate. The two
//! differ by the consistency terms of the interior-penalty forms and agree
//! in magnitude on well-resolved fields.

use crate::assembly::Forms;

/// Additive pieces of the Lyapunov functional, each a quadratic form.
#[derive(Debug, Clone, Copy)]
pub struct EnergyParts {
    /// Kinetic energy of the (u, w) rates under the coupled mass matrix.
    pub kinetic: f64,
    /// Elastic strain energy of u under the full interior-penalty form.
    pub elastic: f64,
    /// Storage energy of alpha u + w under the divergence form.
    pub storage: f64,
    /// Thermal mass of the temperature.
    pub thermal: f64,
}

impl EnergyParts {
    pub fn total(&self) -> f64 {
        self.kinetic + self.elastic + self.storage + self.thermal
    }
}

fn split_state<'a>(forms: &Forms, x: &'a [f64]) -> (&'a [f64], &'a [f64], &'a [f64]) {
    let n = forms.n_scalar;
    assert_eq!(x.len(), 5 * n, "state vector must hold [U; W; T]");
    let (u, rest) = x.split_at(2 * n);
    let (w, t) = rest.split_at(2 * n);
    (u, w, t)
}

/// Kinetic part y' M_uw y with the symmetric 2x2 density-block mass.
fn uw_kinetic(forms: &Forms, y: &[f64]) -> f64 {
    let (yu, yw, _) = split_state(forms, y);
    forms.mass_rho.quadratic_form(yu, yu)
        + 2.0 * forms.mass_rho_f.quadratic_form(yu, yw)
        + forms.mass_rho_w.quadratic_form(yw, yw)
}

fn storage_argument(forms: &Forms, xu: &[f64], xw: &[f64]) -> Vec<f64> {
    xu.iter()
        .zip(&forms.alpha_diag)
        .zip(xw)
        .map(|((u, a), w)| a * u + w)
        .collect()
}

/// Evaluate the Lyapunov functional for positions `x` and rates `y`.
pub fn lyapunov_parts(forms: &Forms, x: &[f64], y: &[f64]) -> EnergyParts {
    let (xu, xw, xt) = split_state(forms, x);
    let z = storage_argument(forms, xu, xw);
    EnergyParts {
        kinetic: uw_kinetic(forms, y),
        elastic: forms.a_e.quadratic_form(xu, xu),
        storage: forms.a_p.quadratic_form(&z, &z),
        thermal: forms.mass_t.quadratic_form(xt, xt),
    }
}

/// Total Lyapunov functional; non-increasing along unforced trajectories.
pub fn lyapunov_energy(forms: &Forms, x: &[f64], y: &[f64]) -> f64 {
    lyapunov_parts(forms, x, y).total()
}

/// Squared energy norm: kinetic and thermal masses plus the dG norm Grams
/// of u and alpha u + w and the drag mass of the filtration rate.
pub fn energy_norm_squared(forms: &Forms, x: &[f64], y: &[f64]) -> f64 {
    let (xu, xw, xt) = split_state(forms, x);
    let (_, yw, _) = split_state(forms, y);
    let z = storage_argument(forms, xu, xw);
    uw_kinetic(forms, y)
        + forms.mass_t.quadratic_form(xt, xt)
        + forms.n_e.quadratic_form(xu, xu)
        + forms.n_p.quadratic_form(&z, &z)
        + forms.damp_w.quadratic_form(yw, yw)
}

/// Energy norm of a state; square root of `energy_norm_squared`.
pub fn energy_norm(forms: &Forms, x: &[f64], y: &[f64]) -> f64 {
    energy_norm_squared(forms, x, y).max(0.0).sqrt()
}

/// Check that a recorded energy series never rises by more than
/// `rel_tol` times the initial value from one entry to the next.
pub fn monotone_nonincreasing(series: &[f64], rel_tol: f64) -> bool {
    let scale = series.first().copied().unwrap_or(0.0).abs().max(f64::MIN_POSITIVE);
    series.windows(2).all(|w| w[1] <= w[0] + rel_tol * scale)
}
