//! Interior-penalty stabilization coefficients.
//!
//! Every face carries four penalty values, one per stabilized form. Each is
//! `alpha_i * coef * l^2 / h` evaluated one-sided on boundary faces and as the
//! max over the two adjacent cells on internal faces, where `coef` picks the
//! physical coefficient the form stabilizes.

use crate::error::{Error, Result};
use crate::materials::MaterialMap;
use crate::mesh::PolyMesh;
use crate::space::DGSpace;
use serde::{Deserialize, Serialize};

/// Global penalty multipliers alpha_1..alpha_4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PenaltyCoefficients {
    /// Multiplier for the shear-jump penalty (weight mu).
    pub alpha1: f64,
    /// Multiplier for the dilatation-jump penalty (weight lambda).
    pub alpha2: f64,
    /// Multiplier for the storage-jump penalty (weight 1/c0).
    pub alpha3: f64,
    /// Multiplier for the thermal-jump penalty (weight theta).
    pub alpha4: f64,
}

impl Default for PenaltyCoefficients {
    fn default() -> Self {
        PenaltyCoefficients {
            alpha1: 10.0,
            alpha2: 10.0,
            alpha3: 10.0,
            alpha4: 10.0,
        }
    }
}

/// Which of the four face penalties to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyKind {
    /// Full displacement jump, weighted by mu.
    Shear,
    /// Normal displacement jump, weighted by lambda.
    Dilatation,
    /// Normal filtration jump, weighted by 1/c0.
    Storage,
    /// Temperature jump, weighted by theta.
    Thermal,
}

impl PenaltyCoefficients {
    pub fn multiplier(&self, kind: PenaltyKind) -> f64 {
        match kind {
            PenaltyKind::Shear => self.alpha1,
            PenaltyKind::Dilatation => self.alpha2,
            PenaltyKind::Storage => self.alpha3,
            PenaltyKind::Thermal => self.alpha4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha1", self.alpha1),
            ("alpha2", self.alpha2),
            ("alpha3", self.alpha3),
            ("alpha4", self.alpha4),
        ] {
            if !(v > 0.0) {
                return Err(Error::Config(format!("penalty {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Core formula: `alpha * max over sides of coef * l^2 / h`.
/// `sides` holds (coefficient, degree, diameter) per adjacent cell.
pub fn penalty_value(alpha: f64, sides: &[(f64, usize, f64)]) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for &(coef, ell, h) in sides {
        if !(coef > 0.0) {
            return Err(Error::Config(format!(
                "non-positive penalty coefficient {coef}"
            )));
        }
        best = best.max(coef * (ell * ell) as f64 / h);
    }
    Ok(alpha * best)
}

/// Penalty of one face for one form, pulling coefficients, degrees, and
/// diameters from the adjacent cells.
pub fn penalty_on_face(
    mesh: &PolyMesh,
    space: &DGSpace,
    materials: &MaterialMap,
    pc: &PenaltyCoefficients,
    face: usize,
    kind: PenaltyKind,
) -> Result<f64> {
    let f = &mesh.faces[face];
    let mut sides = Vec::with_capacity(2);
    for cell in std::iter::once(f.owner).chain(f.neighbor) {
        let m = materials.for_cell(mesh, cell)?;
        let coef = match kind {
            PenaltyKind::Shear => m.mu,
            PenaltyKind::Dilatation => m.lambda,
            PenaltyKind::Storage => 1.0 / m.c0,
            PenaltyKind::Thermal => m.theta,
        };
        sides.push((coef, space.degrees[cell], mesh.geometry(cell).diameter));
    }
    penalty_value(pc.multiplier(kind), &sides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::{sandstone, MaterialMap};
    use crate::mesh::cartesian;

    #[test]
    fn boundary_formula_value() {
        // one-sided: 10 * 1 * 3^2 / 0.1 = 900
        assert_eq!(penalty_value(10.0, &[(1.0, 3, 0.1)]).unwrap(), 900.0);
    }

    #[test]
    fn internal_formula_takes_max_side() {
        // 10 * max(1*4/0.5, 2*9/0.25) = 10 * max(8, 72) = 720
        let v = penalty_value(10.0, &[(1.0, 2, 0.5), (2.0, 3, 0.25)]).unwrap();
        assert_eq!(v, 720.0);
        assert!(penalty_value(10.0, &[(0.0, 2, 0.5)]).is_err());
    }

    #[test]
    fn storage_and_thermal_agree_when_coefficients_match() {
        let mesh = cartesian(2, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = crate::space::DGSpace::uniform(&mesh, 2).unwrap();
        let mut m = sandstone();
        m.c0 = 0.25;
        m.theta = 4.0; // theta == 1/c0
        let map = MaterialMap::single(m);
        let pc = PenaltyCoefficients::default();
        for face in 0..mesh.n_faces() {
            let z = penalty_on_face(&mesh, &space, &map, &pc, face, PenaltyKind::Storage).unwrap();
            let r = penalty_on_face(&mesh, &space, &map, &pc, face, PenaltyKind::Thermal).unwrap();
            assert_eq!(z, r);
        }
    }

    #[test]
    fn face_lookup_uses_cell_diameter_and_degree() {
        let mesh = cartesian(2, 1, [0.0, 1.0], [0.0, 1.0]);
        let space = crate::space::DGSpace::uniform(&mesh, 3).unwrap();
        let map = MaterialMap::single(sandstone());
        let pc = PenaltyCoefficients::default();
        let h = mesh.geometry(0).diameter; // both cells congruent: 0.5 x 1 rectangles
        let internal = mesh.internal_faces().next().unwrap();
        let v = penalty_on_face(&mesh, &space, &map, &pc, internal, PenaltyKind::Shear).unwrap();
        assert!((v - 10.0 * sandstone().mu * 9.0 / h).abs() < 1e-6 * v);
        let boundary = mesh.boundary_faces().next().unwrap();
        let b = penalty_on_face(&mesh, &space, &map, &pc, boundary, PenaltyKind::Shear).unwrap();
        assert_eq!(b, v);
    }
}
