//! Convergence-rate bookkeeping for refinement studies.
//!
//! Mesh refinement uses the standard two-level estimate
//! `rate = log(e_coarse / e_fine) / log(h_coarse / h_fine)`. Degree
//! refinement has no mesh ratio; there the tables report the plain error
//! reduction factor between consecutive degrees. A vanished error means the
//! discrete space contains the exact solution and no finite rate exists;
//! both cases surface as `None` and print as `exact`.

/// Two-level convergence rate; `None` when a level has zero error.
pub fn rate_pair(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> Option<f64> {
    if e_coarse <= 0.0 || e_fine <= 0.0 {
        return None;
    }
    let denom = (h_coarse / h_fine).ln();
    if denom == 0.0 || !denom.is_finite() {
        return None;
    }
    let r = (e_coarse / e_fine).ln() / denom;
    r.is_finite().then_some(r)
}

/// Rates between consecutive entries of an error ladder.
pub fn rate_sequence(hs: &[f64], errors: &[f64]) -> Vec<Option<f64>> {
    assert_eq!(hs.len(), errors.len());
    errors
        .windows(2)
        .zip(hs.windows(2))
        .map(|(e, h)| rate_pair(e[0], e[1], h[0], h[1]))
        .collect()
}

/// Error reduction factors `e_i / e_{i+1}`; `None` when the finer error
/// vanished.
pub fn reduction_factors(errors: &[f64]) -> Vec<Option<f64>> {
    errors
        .windows(2)
        .map(|e| (e[1] > 0.0).then(|| e[0] / e[1]))
        .collect()
}

/// Format a rate cell for tables: two decimals, or `exact` for `None`.
pub fn format_rate(rate: Option<f64>) -> String {
    match rate {
        Some(r) => format!("{r:.2}"),
        None => "exact".to_string(),
    }
}
