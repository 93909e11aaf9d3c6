//! Scratch diagnostic: acceptance-scale ladder dry run.

use std::time::Instant;

use tpdg::driver::{h_study, StudySettings};
use tpdg::materials::convergence_test;
use tpdg::mesh::cartesian;
use tpdg::verification::ManufacturedCase;

fn main() {
    for tau_zero in [false, true] {
        let mut mat = convergence_test();
        if tau_zero {
            mat.tau = 0.0;
        }
        let case = ManufacturedCase::new(mat);
        let settings = StudySettings::new(1e-4, 1000);
        let meshes: Vec<(String, tpdg::mesh::PolyMesh)> = [8usize, 16, 32]
            .iter()
            .map(|&n| (format!("{n}x{n}"), cartesian(n, n, [0.0, 1.0], [0.0, 1.0])))
            .collect();
        let t0 = Instant::now();
        let report = h_study(&meshes, 2, &case, &settings).unwrap();
        println!(
            "--- tau={} ({:.1}s) ---",
            if tau_zero { "0" } else { "0.01" },
            t0.elapsed().as_secs_f64()
        );
        print!("{}", report.csv());
    }
}
