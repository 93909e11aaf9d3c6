//! Verification instruments: error norms, discrete energies, a closed-form
//! reference solution, pressure recovery, and convergence-rate tables.
//!
//! The norms are evaluated from their definitions rather than through the
//! assembled matrices, so the two code paths check each other. Refinement
//! studies collect one `ErrorSample` per level into an `ErrorReport`, which
//! renders the CSV tables consumed by the command-line drivers: one row per
//! level with all eight error columns followed by their rate columns. Under
//! mesh refinement the rates are two-level slopes in `h`; under degree
//! refinement they are plain reduction factors.

pub mod energy;
pub mod manufactured;
pub mod norms;
pub mod pressure;
pub mod rates;

pub use energy::{
    energy_norm, energy_norm_squared, lyapunov_energy, lyapunov_parts, monotone_nonincreasing,
    EnergyParts,
};
pub use manufactured::{angular_frequency, ManufacturedCase};
pub use norms::{error_norms, field_norms, ErrorNorms, ExactFields, ERROR_QUADRATURE_BUMP};
pub use pressure::{
    pressure_error_norms, pressure_field_norms, recover_pressure, PressureNorms,
};
pub use rates::{format_rate, rate_pair, rate_sequence, reduction_factors};

/// Errors of one refinement level.
#[derive(Debug, Clone)]
pub struct ErrorSample {
    /// Mesh or run identifier echoed into logs.
    pub label: String,
    /// Representative mesh size (largest cell diameter).
    pub h: f64,
    /// Polynomial degree of the level.
    pub degree: usize,
    /// Scalar dof count of the level.
    pub dofs: usize,
    pub norms: ErrorNorms,
    pub pressure: PressureNorms,
}

/// A completed refinement study, renderable as a CSV table.
#[derive(Debug, Clone, Default)]
pub struct ErrorReport {
    /// True for mesh refinement (rates in h), false for degree refinement
    /// (rate columns hold error reduction factors).
    pub refine_in_h: bool,
    pub samples: Vec<ErrorSample>,
}

impl ErrorReport {
    pub fn new(refine_in_h: bool) -> Self {
        ErrorReport {
            refine_in_h,
            samples: Vec::new(),
        }
    }

    fn columns(sample: &ErrorSample) -> [f64; 8] {
        [
            sample.norms.l2_u,
            sample.norms.dg_u,
            sample.norms.l2_w,
            sample.norms.dg_w,
            sample.norms.l2_t,
            sample.norms.dg_t,
            sample.pressure.l2,
            sample.pressure.dg,
        ]
    }

    /// Rates of one error column across the collected levels.
    pub fn column_rates(&self, col: usize) -> Vec<Option<f64>> {
        let errors: Vec<f64> = self.samples.iter().map(|s| Self::columns(s)[col]).collect();
        if self.refine_in_h {
            let hs: Vec<f64> = self.samples.iter().map(|s| s.h).collect();
            rates::rate_sequence(&hs, &errors)
        } else {
            rates::reduction_factors(&errors)
        }
    }

    /// Render the study as CSV: one row per level, rates trailing.
    pub fn csv(&self) -> String {
        let names = [
            "L2_u", "dG_u", "L2_w", "dG_w", "L2_T", "dG_T", "L2_p", "dG_p",
        ];
        let mut out = String::new();
        out.push_str(if self.refine_in_h { "h" } else { "degree" });
        out.push_str(",dofs");
        for n in names {
            out.push(',');
            out.push_str(n);
        }
        for n in names {
            out.push_str(",rate_");
            out.push_str(n);
        }
        out.push('\n');

        let all_rates: Vec<Vec<Option<f64>>> = (0..8).map(|c| self.column_rates(c)).collect();
        for (row, sample) in self.samples.iter().enumerate() {
            if self.refine_in_h {
                out.push_str(&format!("{:.6e}", sample.h));
            } else {
                out.push_str(&sample.degree.to_string());
            }
            out.push_str(&format!(",{}", sample.dofs));
            for v in Self::columns(sample) {
                out.push_str(&format!(",{v:.6e}"));
            }
            for rates_col in &all_rates {
                out.push(',');
                if row > 0 {
                    out.push_str(&rates::format_rate(rates_col[row - 1]));
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(h: f64, degree: usize, e: f64) -> ErrorSample {
        ErrorSample {
            label: format!("level-h{h}"),
            h,
            degree,
            dofs: 100,
            norms: ErrorNorms {
                l2_u: e,
                l2_w: e,
                l2_t: e,
                dg_u: e,
                dg_w: e,
                dg_t: e,
            },
            pressure: PressureNorms { l2: e, dg: e },
        }
    }

    #[test]
    fn csv_reports_mesh_rates_as_slopes() {
        let mut report = ErrorReport::new(true);
        report.samples.push(sample(0.2, 2, 0.1));
        report.samples.push(sample(0.1, 2, 0.0125));
        let csv = report.csv();
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("h,dofs,L2_u,dG_u"));
        assert!(header.ends_with("rate_L2_p,rate_dG_p"));
        let first = lines.next().unwrap();
        assert!(first.ends_with(",,,,,,,,"), "no rates on the first row");
        let second = lines.next().unwrap();
        assert!(second.contains(",3.00"), "rate 3 expected: {second}");
    }

    #[test]
    fn csv_reports_degree_rates_as_factors() {
        let mut report = ErrorReport::new(false);
        report.samples.push(sample(0.2, 1, 0.4));
        report.samples.push(sample(0.2, 2, 0.05));
        let csv = report.csv();
        let second = csv.lines().nth(2).unwrap();
        assert!(second.starts_with("2,100"));
        assert!(second.contains(",8.00"), "factor 8 expected: {second}");
    }

    #[test]
    fn vanished_error_prints_exact() {
        let mut report = ErrorReport::new(true);
        report.samples.push(sample(0.2, 2, 0.1));
        report.samples.push(sample(0.1, 2, 0.0));
        let csv = report.csv();
        assert!(csv.lines().nth(2).unwrap().contains("exact"));
    }
}
