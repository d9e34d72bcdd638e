//! Browser bindings for the `www/` demo page.
//!
//! Every export returns a flat `Float64Array` so the page can plot it
//! without any glue beyond `wasm-bindgen`.

use mirror_drag::drag::{self, kinetic_flux_drag_closed};
use mirror_drag::dynamics;
use mirror_drag::kinematics::BETA_MAX;
use mirror_drag::montecarlo;
use mirror_drag::photon_gas::momentum_density_closed;
use mirror_drag::Beta;
use wasm_bindgen::prelude::*;

/// Columns per row of [`drag_curve`].
pub const CURVE_COLUMNS: usize = 5;

fn beta(v: f64) -> Result<Beta, JsError> {
    Beta::new(v).map_err(|e| JsError::new(&e.to_string()))
}

fn js(e: mirror_drag::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Samples `n` points with `1 − β` log-spaced from `1 − beta_min` down to
/// `1 − beta_max`, so the curve resolves both the linear and the divergent end.
///
/// Rows are `[β, f̂, f̂/P̂, 8β, 8β/(1−β)]`.
#[wasm_bindgen]
pub fn drag_curve(beta_min: f64, beta_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    if n < 2 || !(0.0 < beta_min && beta_min < beta_max && beta_max <= BETA_MAX) {
        return Err(JsError::new("need 0 < beta_min < beta_max < 1 and n >= 2"));
    }
    let (lo, hi) = ((-beta_min).ln_1p(), (-beta_max).ln_1p());
    let mut out = Vec::with_capacity(n * CURVE_COLUMNS);
    for i in 0..n {
        let s = i as f64 / (n - 1) as f64;
        let b = beta(-(lo + (hi - lo) * s).exp_m1())?;
        let v = b.value();
        out.extend([v, drag::drag_force(b), drag::ratio(b), drag::asymptote_nonrel(b), 8.0 * v / (1.0 - v)]);
    }
    Ok(out)
}

/// RK4 trajectory as `[τ, β, β_analytic]` triples, thinned to at most
/// `max_points` rows.
#[wasm_bindgen]
pub fn trajectory(beta0: f64, tau_end: f64, step: f64, max_points: usize) -> Result<Vec<f64>, JsError> {
    let b0 = beta(beta0)?;
    let points = dynamics::integrate_trajectory(b0, tau_end, step).map_err(js)?;
    let stride = points.len().div_ceil(max_points.max(2)).max(1);
    let last = points.len() - 1;
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if i % stride == 0 || i == last {
            let exact = dynamics::analytic_solution(b0, p.tau).map_err(js)?;
            out.extend([p.tau, p.beta.value(), exact.value()]);
        }
    }
    Ok(out)
}

/// Monte Carlo momentum density next to its closed form:
/// `[estimate, std_error, closed, E[μ] estimate, E[μ] std_error, E[μ] exact, f̂_kin]`.
#[wasm_bindgen]
pub fn monte_carlo(beta_value: f64, samples: u32, seed: u32) -> Result<Vec<f64>, JsError> {
    let b = beta(beta_value)?;
    let n = u64::from(samples.max(2));
    let p = montecarlo::estimate_momentum_density(b, n, u64::from(seed)).map_err(js)?;
    let mu = montecarlo::estimate_mu_moment(b, n, u64::from(seed)).map_err(js)?;
    Ok(vec![
        p.mean,
        p.std_error,
        momentum_density_closed(b).value(),
        mu.mean,
        mu.std_error,
        montecarlo::direction_mean(b),
        kinetic_flux_drag_closed(b),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_rows_are_consistent() {
        let c = drag_curve(1e-3, 0.999, 20).unwrap();
        assert_eq!(c.len(), 20 * CURVE_COLUMNS);
        assert!((c[0] - 1e-3).abs() < 1e-15);
        assert!((c[19 * CURVE_COLUMNS] - 0.999).abs() < 1e-12);
        for row in c.chunks(CURVE_COLUMNS) {
            assert!((row[1] - 4.0 / 3.0 * row[2]).abs() <= 1e-12 * row[1]);
        }
    }

    #[test]
    fn trajectory_is_thinned_and_ends_on_time() {
        let t = trajectory(0.5, 1.0, 1e-3, 100).unwrap();
        assert!(t.len() / 3 <= 101);
        let end = &t[t.len() - 3..];
        assert_eq!(end[0], 1.0);
        assert!((end[1] - end[2]).abs() < 1e-10);
    }

    #[test]
    fn monte_carlo_tracks_closed_form() {
        let r = monte_carlo(0.5, 200_000, 1).unwrap();
        assert!((r[0] - r[2]).abs() < 5.0 * r[1]);
        assert!((r[3] - r[5]).abs() < 5.0 * r[4]);
    }
}
