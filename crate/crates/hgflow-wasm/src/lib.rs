//! Browser bindings: a plotted Gauss curve, complex-path continuation, and
//! the hypergeometric-solution residual check.  The math lives in plain
//! functions returning `hgflow::Result`, tested natively; the `wasm_bindgen`
//! exports are wrappers that translate errors for JavaScript.

use hgflow::hgsolution::{build_hg_solution, hamiltonian_residual};
use hgflow::params::{parse_params_json, random_params};
use hgflow::pfaffian::{
    continue_with_samples, holomorphic_solution, PathSpec, PfaffianConnection,
};
use hgflow::series::series_coefficients;
use hgflow::{Complex64, Error, Result};

use wasm_bindgen::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Samples F(x) for the one-variable L = 2 function with real parameters on
/// a symmetric grid inside the unit interval.  Returns interleaved pairs
/// (x, F(x)) ready for plotting.
pub fn gauss_curve_points(
    alpha: f64,
    beta: f64,
    gamma: f64,
    count: usize,
    degree: usize,
    x_max: f64,
) -> Result<Vec<f64>> {
    if !(0.0 < x_max && x_max < 1.0) {
        return Err(Error::DomainError(format!("x_max must be in (0, 1), got {x_max}")));
    }
    let hp = hgflow::params::HGParams::new(vec![c(alpha)], vec![c(beta)], vec![c(gamma)])?;
    let ts = series_coefficients(&hp, degree.max(1));
    let count = count.max(2);
    let mut out = Vec::with_capacity(2 * count);
    for k in 0..count {
        let x = -x_max + 2.0 * x_max * k as f64 / (count - 1) as f64;
        let v = ts.eval(&[c(x)])?;
        out.push(x);
        out.push(v.re);
    }
    Ok(out)
}

/// Continues the holomorphic solution seeded at the first waypoint along a
/// path, returning the sampled trace as JSON:
/// `{"samples": [{"s", "x": [[re,im],..], "y": [[re,im],..]}, ..],
///   "final": [[re,im],..]}`.
pub fn continuation_json(
    params_json: &str,
    path_json: &str,
    degree: usize,
    tol: f64,
    per_segment: usize,
) -> Result<String> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::DomainError(format!("tolerance must be positive, got {tol}")));
    }
    let hp = parse_params_json(params_json)?.to_hg()?;
    let path = PathSpec::from_json(path_json)?;
    let hs = holomorphic_solution(&hp, degree.max(1))?;
    let y0 = hs.eval(&path.waypoints()[0])?;
    let pc = PfaffianConnection::new(hp);
    let cont = continue_with_samples(&pc, &path, &y0, tol, per_segment.max(1))?;
    let pairs = |zs: &[Complex64]| -> serde_json::Value {
        zs.iter().map(|z| serde_json::json!([z.re, z.im])).collect()
    };
    let samples: Vec<serde_json::Value> = cont
        .samples
        .iter()
        .map(|(s, x, y)| {
            serde_json::json!({
                "s": s,
                "x": pairs(x),
                "y": pairs(y.data().as_slice()),
            })
        })
        .collect();
    let out = serde_json::json!({
        "samples": samples,
        "final": pairs(cont.final_value.data().as_slice()),
    });
    Ok(out.to_string())
}

/// Draws reducible parameters from the seed, builds the hypergeometric
/// candidate at a staggered interior point, and measures how far it is from
/// solving the canonical equations.  Returns the two residuals.
pub fn theorem_residual_values(
    seed: u64,
    l: usize,
    n: usize,
    degree: usize,
) -> Result<(f64, f64)> {
    let sp = random_params(seed, l, n, true)?;
    let x: Vec<Complex64> = (1..=n as i32).map(|i| c(0.3 * 0.5f64.powi(i))).collect();
    let st = build_hg_solution(&sp, &x, degree.max(1))?;
    let r = hamiltonian_residual(&st)?;
    Ok((r.max_dq, r.max_dp))
}

fn to_js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Interleaved (x, F(x)) pairs for plotting; see `gauss_curve_points`.
#[wasm_bindgen]
pub fn gauss_curve(
    alpha: f64,
    beta: f64,
    gamma: f64,
    count: usize,
    degree: usize,
    x_max: f64,
) -> std::result::Result<Vec<f64>, JsError> {
    gauss_curve_points(alpha, beta, gamma, count, degree, x_max).map_err(to_js)
}

/// JSON continuation trace; see `continuation_json`.
#[wasm_bindgen]
pub fn continuation(
    params_json: &str,
    path_json: &str,
    degree: usize,
    tol: f64,
    per_segment: usize,
) -> std::result::Result<String, JsError> {
    continuation_json(params_json, path_json, degree, tol, per_segment).map_err(to_js)
}

/// JSON `{"max_dq", "max_dp"}` residuals; see `theorem_residual_values`.
#[wasm_bindgen]
pub fn theorem_residuals(
    seed: u32,
    l: usize,
    n: usize,
    degree: usize,
) -> std::result::Result<String, JsError> {
    let (max_dq, max_dp) = theorem_residual_values(seed as u64, l, n, degree).map_err(to_js)?;
    Ok(serde_json::json!({ "max_dq": max_dq, "max_dp": max_dp }).to_string())
}
