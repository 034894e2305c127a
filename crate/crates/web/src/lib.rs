//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust counterpart returning `stabgeo::Result`, so
//! the logic is testable off the browser.

use serde_json::{json, Value};
use stabgeo::facets::{count_violations, two_qubit_facets};
use stabgeo::measures::{self, chsh_dd, ent_entropy, lu_class, sre};
use stabgeo::samplers::{depolarize, CriticalOptions, DepolarizationMode, NoisePath};
use stabgeo::{Error, PureState, Result, System, C64};
use wasm_bindgen::prelude::*;

const FACET_TOL: f64 = 1e-9;

/// Pure qubit state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
pub fn bloch_state(theta: f64, phi: f64) -> PureState {
    let (s, c) = (0.5 * theta).sin_cos();
    PureState::new(vec![C64::new(c, 0.0), C64::from_polar(s, phi)]).expect("unit norm")
}

/// Distance of pure qubit states on an n_theta x n_phi grid, row-major in
/// theta. theta runs over [0, pi] inclusive, phi over [0, 2 pi).
pub fn bloch_grid(n_theta: usize, n_phi: usize) -> Result<Vec<f64>> {
    if n_theta < 2 || n_phi < 1 {
        return Err(Error::Config("grid needs at least 2 x 1 points".into()));
    }
    let mut out = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = std::f64::consts::PI * i as f64 / (n_theta - 1) as f64;
        for j in 0..n_phi {
            let phi = std::f64::consts::TAU * j as f64 / n_phi as f64;
            out.push(measures::ntd(&bloch_state(theta, phi).density())?.value);
        }
    }
    Ok(out)
}

/// Normalized state from interleaved real and imaginary parts.
pub fn state_from_parts(parts: &[f64]) -> Result<PureState> {
    if parts.len() % 2 != 0 {
        return Err(Error::Config("amplitudes need real and imaginary parts".into()));
    }
    let amps: Vec<C64> = parts.chunks_exact(2).map(|c| C64::new(c[0], c[1])).collect();
    System::from_dim(amps.len())?;
    if amps.iter().map(|a| a.norm_sqr()).sum::<f64>() < 1e-24 {
        return Err(Error::Config("the zero vector is not a state".into()));
    }
    PureState::normalized(amps)
}

/// Measures of a two-qubit pure state.
pub fn explore(parts: &[f64]) -> Result<Value> {
    let psi = state_from_parts(parts)?;
    if psi.dim() != 4 {
        return Err(Error::Unsupported("the explorer takes two-qubit states".into()));
    }
    let rho = psi.density();
    let d = measures::ntd(&rho)?;
    let facets = two_qubit_facets()?;
    let pv = stabgeo::pauli::pauli_vector(&rho)?;
    let mut by_class = [0usize; 8];
    for (f, &c) in facets.facets.iter().zip(&facets.class_of) {
        if f.evaluate_pauli(&pv).is_some_and(|v| v < -FACET_TOL) {
            by_class[usize::from(c) - 1] += 1;
        }
    }
    Ok(json!({
        "amplitudes": psi.amplitudes().iter().map(|a| [a.re, a.im]).collect::<Vec<_>>(),
        "ntd": d.value,
        "ntd_gap": d.gap,
        "rom": measures::rom(&rho)?.value,
        "sre2": sre(&psi, 2.0)?,
        "entropy": ent_entropy(&psi)?,
        "lu_class": lu_class(&psi)?.to_string(),
        "chsh": chsh_dd(&rho)?,
        "violated": count_violations(&rho, &facets.facets, FACET_TOL)?,
        "violated_by_class": by_class,
    }))
}

fn parse_mode(mode: &str) -> Result<DepolarizationMode> {
    mode.parse().map_err(|_| Error::Config(format!("unknown noise mode {mode}")))
}

/// Distance along a depolarizing path and the critical noise level.
pub fn depolarization(parts: &[f64], mode: &str, points: usize) -> Result<Value> {
    let psi = state_from_parts(parts)?;
    let mode = parse_mode(mode)?;
    if points < 2 {
        return Err(Error::Config("need at least two points".into()));
    }
    let system = System::from_dim(psi.dim())?;
    if system == System::Qubit3 {
        return Err(Error::Unsupported("three-qubit paths are too slow for the page".into()));
    }
    let rho = psi.density();
    let mut ps = Vec::with_capacity(points);
    let mut ds = Vec::with_capacity(points);
    for k in 0..points {
        let p = k as f64 / (points - 1) as f64;
        ps.push(p);
        ds.push(measures::ntd(&depolarize(&rho, p, mode)?)?.value);
    }
    let critical = NoisePath::new(&rho, mode)?.critical(&CriticalOptions::default())?;
    Ok(json!({ "system": system.to_string(), "mode": mode.to_string(), "p": ps, "ntd": ds, "critical": critical }))
}

fn js_err(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = blochGrid)]
pub fn bloch_grid_js(n_theta: usize, n_phi: usize) -> std::result::Result<Vec<f64>, JsError> {
    bloch_grid(n_theta, n_phi).map_err(js_err)
}

#[wasm_bindgen(js_name = blochDistance)]
pub fn bloch_distance_js(theta: f64, phi: f64) -> std::result::Result<f64, JsError> {
    Ok(measures::ntd(&bloch_state(theta, phi).density()).map_err(js_err)?.value)
}

/// JSON with the measures of a two-qubit state given as [re0, im0, ..., re3, im3].
#[wasm_bindgen(js_name = exploreTwoQubit)]
pub fn explore_js(parts: Vec<f64>) -> std::result::Result<String, JsError> {
    Ok(explore(&parts).map_err(js_err)?.to_string())
}

/// JSON with the distance curve and critical noise; mode is "global" or "local".
#[wasm_bindgen(js_name = depolarizationPath)]
pub fn depolarization_js(parts: Vec<f64>, mode: &str, points: usize) -> std::result::Result<String, JsError> {
    Ok(depolarization(&parts, mode, points).map_err(js_err)?.to_string())
}
