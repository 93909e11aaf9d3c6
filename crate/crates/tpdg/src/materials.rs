//! Per-region thermo-poroelastic material coefficients.
//!
//! Coefficients are element-wise constant: each mesh cell carries a region
//! tag and every tag maps to one [`MaterialRegion`]. Units follow the SI
//! symbols listed on the fields, but the solver itself is unit-agnostic and
//! works with whatever consistent scaling the configuration uses.

use crate::error::{Error, Result};
use crate::mesh::PolyMesh;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Coefficient set for one homogeneous region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialRegion {
    /// Thermal capacity [Pa/K^2].
    pub a0: f64,
    /// Thermal dilatation of the fluid [1/K].
    pub b0: f64,
    /// Specific storage [1/Pa].
    pub c0: f64,
    /// Biot-Willis coefficient [-].
    pub alpha: f64,
    /// Thermal stress coefficient [Pa/K].
    pub beta: f64,
    /// Shear modulus [Pa].
    pub mu: f64,
    /// First Lame parameter [Pa].
    pub lambda: f64,
    /// Hydraulic mobility [m^2/(Pa s)].
    pub k: f64,
    /// Thermal conductivity [m^2 Pa/(K^2 s)].
    pub theta: f64,
    /// Fluid density [kg/m^3].
    pub rho_f: f64,
    /// Solid grain density [kg/m^3].
    pub rho_s: f64,
    /// Porosity [-].
    pub phi: f64,
    /// Tortuosity [-].
    pub a: f64,
    /// Thermal relaxation time [s].
    pub tau: f64,
}

/// Outcome of validating one region: hard violations plus advisory notes.
#[derive(Debug, Clone, Default)]
pub struct ValidityReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
    /// Reduced thermal capacity a0 - b0^2/c0, the temperature mass weight.
    pub reduced_thermal_capacity: f64,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

impl MaterialRegion {
    /// Bulk density rho = phi rho_f + (1 - phi) rho_s.
    pub fn rho(&self) -> f64 {
        self.phi * self.rho_f + (1.0 - self.phi) * self.rho_s
    }

    /// Filtration inertia rho_w = (a / phi) rho_f.
    pub fn rho_w(&self) -> f64 {
        (self.a / self.phi) * self.rho_f
    }

    /// Temperature mass weight a0 - b0^2/c0.
    pub fn reduced_thermal_capacity(&self) -> f64 {
        self.a0 - self.b0 * self.b0 / self.c0
    }

    /// Weight multiplying div(u-dot) in the energy equation: alpha b0/c0 + beta.
    pub fn c1(&self) -> f64 {
        self.alpha * self.b0 / self.c0 + self.beta
    }

    /// Weight multiplying div(w-dot) in the energy equation: b0/c0.
    pub fn c2(&self) -> f64 {
        self.b0 / self.c0
    }

    /// Frequency ceiling of the low-frequency regime: f_c = phi/(2 pi a k rho_f).
    pub fn critical_frequency(&self) -> f64 {
        self.phi / (2.0 * PI * self.a * self.k * self.rho_f)
    }

    /// Check model assumptions. Violations that break the formulation are
    /// errors; degenerate-but-usable settings (pure poroelastic limits,
    /// tortuosity exactly one) are warnings.
    pub fn validate(&self) -> ValidityReport {
        let mut r = ValidityReport {
            reduced_thermal_capacity: self.reduced_thermal_capacity(),
            ..Default::default()
        };
        let mut err = |cond: bool, msg: &str| {
            if cond {
                r.errors.push(msg.to_string());
            }
        };
        err(!(self.c0 > 0.0), "c0 must be positive");
        err(self.b0 < 0.0, "b0 must be non-negative");
        err(!(self.mu > 0.0), "mu must be positive");
        err(!(self.lambda > 0.0), "lambda must be positive");
        err(!(self.k > 0.0), "k must be positive");
        err(!(self.theta > 0.0), "theta must be positive");
        err(!(self.rho_f > 0.0), "rho_f must be positive");
        err(!(self.rho_s > 0.0), "rho_s must be positive");
        err(
            !(self.phi > 0.0 && self.phi < 1.0),
            "phi must lie strictly between 0 and 1",
        );
        err(self.a < 1.0, "tortuosity a must be at least 1");
        err(self.tau < 0.0, "tau must be non-negative");
        err(self.beta < 0.0, "beta must be non-negative");
        if self.c0 > 0.0 && !(self.reduced_thermal_capacity() > 0.0) {
            r.errors
                .push("reduced thermal capacity a0 - b0^2/c0 must be positive".into());
        }
        if self.a == 1.0 {
            r.warnings.push("tortuosity a = 1 is a limit value".into());
        }
        if self.beta == 0.0 {
            r.warnings
                .push("beta = 0 removes thermal stress coupling (poroelastic limit)".into());
        }
        if self.b0 == 0.0 {
            r.warnings
                .push("b0 = 0 removes thermal fluid coupling (poroelastic limit)".into());
        }
        if self.alpha <= self.phi || self.alpha > 1.0 {
            r.warnings.push(format!(
                "alpha = {} outside the usual range phi < alpha <= 1 (phi = {})",
                self.alpha, self.phi
            ));
        }
        r
    }
}

/// Region tag to coefficient set, covering every tag the mesh uses.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MaterialMap {
    pub regions: BTreeMap<i32, MaterialRegion>,
}

impl MaterialMap {
    pub fn single(m: MaterialRegion) -> Self {
        let mut regions = BTreeMap::new();
        regions.insert(0, m);
        MaterialMap { regions }
    }

    pub fn get(&self, tag: i32) -> Result<&MaterialRegion> {
        self.regions
            .get(&tag)
            .ok_or_else(|| Error::InvalidMaterials(format!("no material for region tag {tag}")))
    }

    /// Material of a given cell through its region tag.
    pub fn for_cell<'a>(&'a self, mesh: &PolyMesh, cell: usize) -> Result<&'a MaterialRegion> {
        self.get(mesh.cells[cell].region)
    }

    /// Validate every region and ensure the mesh is fully covered.
    /// Returns the collected warnings on success.
    pub fn validate(&self, mesh: &PolyMesh) -> Result<Vec<String>> {
        if self.regions.is_empty() {
            return Err(Error::InvalidMaterials("no material regions defined".into()));
        }
        let mut warnings = Vec::new();
        for (tag, m) in &self.regions {
            let rep = m.validate();
            if !rep.is_valid() {
                return Err(Error::InvalidMaterials(format!(
                    "region {tag}: {}",
                    rep.errors.join("; ")
                )));
            }
            for w in rep.warnings {
                warnings.push(format!("region {tag}: {w}"));
            }
        }
        for cell in 0..mesh.n_cells() {
            let tag = mesh.cells[cell].region;
            if !self.regions.contains_key(&tag) {
                return Err(Error::InvalidMaterials(format!(
                    "cell {cell} has region tag {tag} with no material entry"
                )));
            }
        }
        Ok(warnings)
    }

    /// The single relaxation time shared by all regions. The time integrator
    /// treats tau as one global scalar, so mixed values are rejected.
    pub fn uniform_tau(&self) -> Result<f64> {
        let mut it = self.regions.values();
        let first = it
            .next()
            .ok_or_else(|| Error::InvalidMaterials("no material regions defined".into()))?
            .tau;
        for m in it {
            if m.tau != first {
                return Err(Error::InvalidMaterials(format!(
                    "tau must be uniform across regions (found {first} and {})",
                    m.tau
                )));
            }
        }
        Ok(first)
    }

    pub fn max_critical_frequency_violations(&self, f0: f64) -> Vec<i32> {
        self.regions
            .iter()
            .filter(|(_, m)| f0 >= m.critical_frequency())
            .map(|(t, _)| *t)
            .collect()
    }
}

/// Sandstone-like coefficients used by the physical wave-propagation tests.
pub fn sandstone() -> MaterialRegion {
    MaterialRegion {
        a0: 4.1695,
        b0: 1.4361e-5,
        c0: 1.4361e-10,
        alpha: 0.9514,
        beta: 2.4857e4,
        mu: 1.885e9,
        lambda: 4.433e8,
        k: 1e-9,
        theta: 1.5e4,
        rho_f: 1000.0,
        rho_s: 2650.0,
        phi: 0.3,
        a: 2.0,
        tau: 1.5e-2,
    }
}

/// Stiffer right-layer coefficients for the heterogeneous test; unlisted
/// fields coincide with [`sandstone`].
pub fn sandstone_stiff() -> MaterialRegion {
    MaterialRegion {
        a0: 4.1017,
        b0: 1.3684e-5,
        c0: 1.3684e-10,
        alpha: 0.7143,
        beta: 4.8571e4,
        mu: 9e9,
        lambda: 4e9,
        ..sandstone()
    }
}

/// Non-dimensional coefficients used by the manufactured convergence tests.
pub fn convergence_test() -> MaterialRegion {
    MaterialRegion {
        a0: 0.02,
        b0: 0.01,
        c0: 0.03,
        alpha: 1.0,
        beta: 0.8,
        mu: 1.0,
        lambda: 5.0,
        k: 0.2,
        theta: 0.05,
        rho_f: 0.03,
        rho_s: 0.03,
        phi: 0.5,
        a: 1.0,
        tau: 0.01,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sandstone_derived_quantities() {
        let m = sandstone();
        assert_relative_eq!(m.rho(), 2155.0, epsilon = 1e-12);
        assert_relative_eq!(m.rho_w(), 2.0 / 0.3 * 1000.0, epsilon = 1e-9);
        assert_relative_eq!(m.reduced_thermal_capacity(), 2.7334, epsilon = 1e-12);
        assert_relative_eq!(m.c1(), 0.9514e5 + 2.4857e4, epsilon = 1e-7);
        assert_relative_eq!(m.c2(), 1.0e5, epsilon = 1e-7);
        assert_relative_eq!(m.critical_frequency(), 23873.241463784303, epsilon = 1e-9);
        // a 5 Hz source sits far below the critical frequency
        assert!(MaterialMap::single(m)
            .max_critical_frequency_violations(5.0)
            .is_empty());
        assert!(m.validate().is_valid());
    }

    #[test]
    fn convergence_set_derived_quantities() {
        let m = convergence_test();
        assert_relative_eq!(m.rho(), 0.03, epsilon = 1e-15);
        assert_relative_eq!(m.rho_w(), 0.06, epsilon = 1e-15);
        assert_relative_eq!(m.reduced_thermal_capacity(), 0.02 - 1.0 / 300.0, epsilon = 1e-15);
        let rep = m.validate();
        assert!(rep.is_valid());
        // a = 1 is flagged but allowed
        assert!(rep.warnings.iter().any(|w| w.contains("tortuosity")));
    }

    #[test]
    fn stiff_layer_is_valid() {
        let m = sandstone_stiff();
        assert!(m.validate().is_valid());
        assert_relative_eq!(m.reduced_thermal_capacity(), 4.1017 - 1.3684, epsilon = 1e-12);
        assert_eq!(m.rho(), sandstone().rho());
    }

    #[test]
    fn density_scaling_is_linear() {
        let mut m = sandstone();
        let (r0, rw0) = (m.rho(), m.rho_w());
        m.rho_f *= 3.0;
        m.rho_s *= 3.0;
        assert_relative_eq!(m.rho(), 3.0 * r0, epsilon = 1e-9);
        assert_relative_eq!(m.rho_w(), 3.0 * rw0, epsilon = 1e-9);
        // doubling k halves the critical frequency
        let f0 = sandstone().critical_frequency();
        let mut m2 = sandstone();
        m2.k *= 2.0;
        assert_relative_eq!(m2.critical_frequency(), 0.5 * f0, epsilon = 1e-9);
    }

    #[test]
    fn invalid_settings_are_rejected() {
        let cases: &[(&str, fn(&mut MaterialRegion))] = &[
            ("c0 must be positive", |m| m.c0 = 0.0),
            ("b0 must be non-negative", |m| m.b0 = -1e-6),
            ("mu must be positive", |m| m.mu = 0.0),
            ("lambda must be positive", |m| m.lambda = -1.0),
            ("k must be positive", |m| m.k = 0.0),
            ("theta must be positive", |m| m.theta = 0.0),
            ("rho_f must be positive", |m| m.rho_f = 0.0),
            ("rho_s must be positive", |m| m.rho_s = -2.0),
            ("phi must lie strictly between 0 and 1", |m| m.phi = 1.0),
            ("tortuosity a must be at least 1", |m| m.a = 0.9),
            ("tau must be non-negative", |m| m.tau = -0.01),
            ("beta must be non-negative", |m| m.beta = -1.0),
            ("reduced thermal capacity a0 - b0^2/c0 must be positive", |m| {
                m.a0 = m.b0 * m.b0 / m.c0
            }),
        ];
        for (msg, mutate) in cases {
            let mut m = sandstone();
            mutate(&mut m);
            let rep = m.validate();
            assert!(
                rep.errors.iter().any(|e| e == msg),
                "expected '{msg}', got {:?}",
                rep.errors
            );
        }
    }

    #[test]
    fn poroelastic_limit_warns_but_passes() {
        let mut m = sandstone();
        m.b0 = 0.0;
        m.beta = 0.0;
        let rep = m.validate();
        assert!(rep.is_valid());
        assert_eq!(
            rep.warnings
                .iter()
                .filter(|w| w.contains("poroelastic limit"))
                .count(),
            2
        );
    }

    #[test]
    fn map_requires_full_mesh_coverage_and_uniform_tau() {
        let mesh = crate::mesh::cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let map = MaterialMap::single(sandstone());
        assert!(map.validate(&mesh).is_ok());

        let mut tagged = mesh.clone();
        tagged.assign_regions(|c| if c.x < 0.5 { 0 } else { 7 });
        assert!(map.validate(&tagged).is_err());

        let mut two = map.clone();
        let mut other = sandstone_stiff();
        other.tau = 0.02;
        two.regions.insert(7, other);
        assert!(two.validate(&tagged).is_ok());
        assert!(two.uniform_tau().is_err());
        two.regions.get_mut(&7).unwrap().tau = sandstone().tau;
        assert_eq!(two.uniform_tau().unwrap(), 1.5e-2);
    }
}
