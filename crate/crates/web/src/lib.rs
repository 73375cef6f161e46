//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns a flat `Float64Array`; layouts are documented on the
//! functions in [`ops`].

pub mod ops;

use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub fn polya_curve(n: u32, alpha: f64, s: f64) -> Result<Vec<f64>, JsError> {
    ops::polya_curve(n.into(), alpha, s).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn two_photon_curve(
    alpha: f64,
    s_min: f64,
    s_max: f64,
    points: u32,
) -> Result<Vec<f64>, JsError> {
    ops::two_photon_curve(alpha, s_min, s_max, points as usize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn photon_pmf(
    model: &str,
    volume: f64,
    w: f64,
    gamma: f64,
    kmax: u32,
) -> Result<Vec<f64>, JsError> {
    ops::photon_pmf(model, volume, w, gamma, kmax.into()).map_err(|e| JsError::new(&e))
}
