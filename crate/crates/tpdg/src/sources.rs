//! Seismic point sources.
//!
//! A source is a symmetric moment tensor acting at a point, modulated in
//! time by a Gaussian-windowed cosine pulse. Its weak contribution against
//! a test function v is M : grad v evaluated at the source location,
//! restricted to the cell that contains the point, so the discrete load is
//! a fixed spatial pattern scaled by the pulse value at each time level.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::mesh::PolyMesh;
use crate::space::DGSpace;

/// Gaussian-windowed cosine pulse `A cos(2 pi f0 (t - t0)) exp(-2 f0^2 (t - t0)^2)`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianCosinePulse {
    /// Peak amplitude, reached at the delay time.
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    /// Center frequency of the modulated cosine, in Hz.
    #[serde(default = "default_frequency")]
    pub frequency: f64,
    /// Time of the pulse peak, in seconds.
    #[serde(default = "default_delay")]
    pub delay: f64,
}

fn default_amplitude() -> f64 {
    10.0
}

fn default_frequency() -> f64 {
    5.0
}

fn default_delay() -> f64 {
    0.3
}

impl Default for GaussianCosinePulse {
    fn default() -> Self {
        GaussianCosinePulse {
            amplitude: default_amplitude(),
            frequency: default_frequency(),
            delay: default_delay(),
        }
    }
}

impl GaussianCosinePulse {
    pub fn value(&self, t: f64) -> f64 {
        let s = t - self.delay;
        let f = self.frequency;
        self.amplitude * (2.0 * std::f64::consts::PI * f * s).cos() * (-2.0 * f * f * s * s).exp()
    }
}

/// Symmetric moment tensor in 2D. The default is a pure shear couple,
/// which radiates a quadrupole pattern symmetric about both diagonals.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentTensor {
    #[serde(default)]
    pub xx: f64,
    #[serde(default)]
    pub yy: f64,
    #[serde(default = "default_shear")]
    pub xy: f64,
}

fn default_shear() -> f64 {
    1.0
}

impl Default for MomentTensor {
    fn default() -> Self {
        MomentTensor {
            xx: 0.0,
            yy: 0.0,
            xy: 1.0,
        }
    }
}

/// A moment tensor acting at a point with a pulse time history.
#[derive(Clone, Copy, Debug)]
pub struct PointMomentSource {
    pub position: Point2,
    pub tensor: MomentTensor,
    pub pulse: GaussianCosinePulse,
}

/// A source bound to a discrete space: the spatial pattern is fixed and
/// each evaluation only scales it by the pulse.
pub struct BoundSource {
    pulse: GaussianCosinePulse,
    /// Nonzero entries over the displacement block: (dof, weight).
    pattern: Vec<(usize, f64)>,
    /// Set when the source point sits on or near a cell interface, where
    /// the single-cell restriction is a choice among equals.
    pub warning: Option<String>,
}

impl PointMomentSource {
    /// Restricts the source to the containing cell and tabulates the
    /// pattern `M : grad v` there. Points on a cell interface go to the
    /// lowest-indexed containing cell and produce a warning.
    pub fn bind(&self, mesh: &PolyMesh, space: &DGSpace) -> Result<BoundSource> {
        let cell = mesh
            .locate(self.position)
            .ok_or(Error::OutsideMesh([self.position.x, self.position.y]))?;
        let edge_distance = mesh.distance_to_cell_boundary(cell, self.position);
        let warning = if edge_distance <= 1e-9 * mesh.mesh_size() {
            Some(format!(
                "source point ({}, {}) lies on a cell interface; its load is \
                 assigned to cell {} only",
                self.position.x, self.position.y, cell
            ))
        } else {
            None
        };

        let m = space.n_local(cell);
        let vo = space.vec_offset(cell);
        let tab = space.tabulate(cell, &[self.position]);
        let rows = [
            [self.tensor.xx, self.tensor.xy],
            [self.tensor.xy, self.tensor.yy],
        ];
        let mut pattern = Vec::new();
        for (ci, row) in rows.iter().enumerate() {
            for j in 0..m {
                let weight = row[0] * tab.dx[(0, j)] + row[1] * tab.dy[(0, j)];
                if weight != 0.0 {
                    pattern.push((vo + ci * m + j, weight));
                }
            }
        }
        Ok(BoundSource {
            pulse: self.pulse,
            pattern,
            warning,
        })
    }
}

impl BoundSource {
    /// Adds the load at time `t` into the displacement block of a composed
    /// load vector.
    pub fn add_to(&self, t: f64, f: &mut [f64]) {
        let h = self.pulse.value(t);
        if h == 0.0 {
            return;
        }
        for (dof, weight) in &self.pattern {
            f[*dof] += h * weight;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::cartesian;
    use crate::space::{l2_project_vector, DGSpace};
    use crate::geometry::Vector2;

    #[test]
    fn pulse_peaks_at_delay_and_is_even_around_it() {
        let pulse = GaussianCosinePulse::default();
        assert_eq!(pulse.value(0.3), 10.0);
        for s in [0.01, 0.05, 0.11] {
            assert!((pulse.value(0.3 + s) - pulse.value(0.3 - s)).abs() < 1e-14);
        }
        // half a period after the peak: cos(pi) exp(-1/2)
        let expected = -10.0 * (-0.5f64).exp();
        assert!((pulse.value(0.3 + 0.1) - expected).abs() < 1e-12);
    }

    #[test]
    fn pattern_applies_tensor_to_discrete_gradient() {
        let mesh = cartesian(3, 3, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 2).unwrap();
        // quadratic field, reproduced exactly by the projection
        let u = l2_project_vector(
            &mesh,
            &space,
            |p| Vector2::new(p.x * p.x + 2.0 * p.y, p.x * p.y - p.y * p.y),
            0,
        )
        .unwrap();
        let position = Point2::new(0.47, 0.21);
        let source = PointMomentSource {
            position,
            tensor: MomentTensor {
                xx: 1.5,
                yy: -0.5,
                xy: 2.0,
            },
            pulse: GaussianCosinePulse {
                amplitude: 1.0,
                frequency: 5.0,
                delay: 0.0,
            },
        };
        let bound = source.bind(&mesh, &space).unwrap();
        assert!(bound.warning.is_none());
        let mut f = vec![0.0; 2 * space.n_dofs];
        bound.add_to(0.0, &mut f);
        let pattern_dot_u: f64 = f.iter().zip(&u).map(|(a, b)| a * b).sum();
        // M : grad u at the source point, from the analytic gradient
        let (x, y) = (position.x, position.y);
        let grad = [[2.0 * x, 2.0], [y, x - 2.0 * y]];
        let expected = 1.5 * grad[0][0] + 2.0 * grad[0][1] + 2.0 * grad[1][0] - 0.5 * grad[1][1];
        assert!((pattern_dot_u - expected).abs() < 1e-11);
    }

    #[test]
    fn pattern_is_linear_in_the_tensor() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 3).unwrap();
        let at = |tensor: MomentTensor| {
            let source = PointMomentSource {
                position: Point2::new(0.3, 0.65),
                tensor,
                pulse: GaussianCosinePulse {
                    amplitude: 1.0,
                    frequency: 1.0,
                    delay: 0.0,
                },
            };
            let mut f = vec![0.0; 2 * space.n_dofs];
            source.bind(&mesh, &space).unwrap().add_to(0.0, &mut f);
            f
        };
        let a = at(MomentTensor { xx: 1.0, yy: 0.0, xy: 0.0 });
        let b = at(MomentTensor { xx: 0.0, yy: 2.0, xy: -1.0 });
        let sum = at(MomentTensor { xx: 1.0, yy: 2.0, xy: -1.0 });
        for i in 0..sum.len() {
            assert!((a[i] + b[i] - sum[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_basis_receives_no_moment_load() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 0).unwrap();
        let source = PointMomentSource {
            position: Point2::new(0.3, 0.3),
            tensor: MomentTensor::default(),
            pulse: GaussianCosinePulse::default(),
        };
        let bound = source.bind(&mesh, &space).unwrap();
        let mut f = vec![0.0; 2 * space.n_dofs];
        bound.add_to(0.3, &mut f);
        assert!(f.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn outside_points_and_interface_points_are_flagged() {
        let mesh = cartesian(2, 2, [0.0, 1.0], [0.0, 1.0]);
        let space = DGSpace::uniform(&mesh, 1).unwrap();
        let outside = PointMomentSource {
            position: Point2::new(1.5, 0.5),
            tensor: MomentTensor::default(),
            pulse: GaussianCosinePulse::default(),
        };
        assert!(outside.bind(&mesh, &space).is_err());
        let on_interface = PointMomentSource {
            position: Point2::new(0.5, 0.25),
            tensor: MomentTensor::default(),
            pulse: GaussianCosinePulse::default(),
        };
        let bound = on_interface.bind(&mesh, &space).unwrap();
        assert!(bound.warning.is_some());
    }
}
