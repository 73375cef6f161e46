//! Photon counting statistics of a homogeneously broadened (Lorentzian)
//! line, from the generating function
//! `Q(lambda, tau) = exp{-[(gamma^2 + 2 gamma W lambda)^{1/2} - gamma] tau}`,
//! `lambda = 1 - z`.

use serde::Serialize;

use super::SeriesPoly;
use crate::dist::PmfTable;
use crate::error::{domain, Result};

/// Default series order.
pub const DEFAULT_ORDER: usize = 64;

/// Negative coefficients smaller than this in magnitude are rounding noise.
const CLAMP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GlauberParams {
    /// Spectral half-width, 1/s.
    pub gamma: f64,
    /// Mean photons per second.
    pub photon_rate: f64,
    /// Sampling time, s.
    pub tau: f64,
}

impl GlauberParams {
    pub fn new(gamma: f64, photon_rate: f64, tau: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(domain(format!("line half-width must be > 0, got {gamma}")));
        }
        if !(photon_rate.is_finite() && photon_rate >= 0.0) {
            return Err(domain(format!(
                "photon rate must be >= 0, got {photon_rate}"
            )));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(domain(format!("sampling time must be > 0, got {tau}")));
        }
        Ok(Self {
            gamma,
            photon_rate,
            tau,
        })
    }

    pub fn with_tau(self, tau: f64) -> Result<Self> {
        Self::new(self.gamma, self.photon_rate, tau)
    }

    /// `2W/gamma`.
    fn u0(&self) -> f64 {
        2.0 * self.photon_rate / self.gamma
    }

    /// `p_0 = exp{-[(gamma^2 + 2 gamma W)^{1/2} - gamma] tau}`, written to
    /// avoid cancellation when `gamma >> W`.
    pub fn vacuum_probability(&self) -> f64 {
        let u0 = self.u0();
        (-self.gamma * self.tau * u0 / ((1.0 + u0).sqrt() + 1.0)).exp()
    }

    /// `ln Q` at real `z` inside the radius of convergence
    /// `1 + gamma/(2W)`; `None` outside it.
    fn ln_gf_at(&self, z: f64) -> Option<f64> {
        let inner = 1.0 + self.u0() * (1.0 - z);
        (inner > 0.0).then(|| -self.gamma * self.tau * (inner.sqrt() - 1.0))
    }

    /// Certified bound on `sum_{k > order} p_k`.
    ///
    /// The coefficients are nonnegative, so for every `1 < r` below the
    /// radius of convergence `sum_{k > N} p_k <= Q(r) / r^{N+1}`; the bound
    /// is minimized over a grid of `r`.
    pub fn tail_bound(&self, order: usize) -> f64 {
        if self.photon_rate == 0.0 {
            return 0.0;
        }
        let radius = 1.0 + self.gamma / (2.0 * self.photon_rate);
        let m = (order + 1) as f64;
        let mut best = f64::INFINITY;
        for i in 1..400 {
            let r = 1.0 + (radius - 1.0) * i as f64 / 400.0;
            if let Some(lq) = self.ln_gf_at(r) {
                let ln_bound = lq - m * r.ln();
                best = best.min(ln_bound.exp());
            }
        }
        best.min(1.0)
    }

    /// Smallest order whose certified tail is below `tolerance`.
    pub fn order_for_tail(&self, tolerance: f64, max_order: usize) -> Option<usize> {
        let mut order = 0usize;
        while self.tail_bound(order) >= tolerance {
            order = if order < 16 {
                order + 1
            } else {
                order + order / 8
            };
            if order > max_order {
                return None;
            }
        }
        // Refine downward after the geometric steps.
        while order > 0 && self.tail_bound(order - 1) < tolerance {
            order -= 1;
        }
        Some(order)
    }
}

/// Raw series of `Q(1 - z, tau)` up to `z^order`, before any clamping.
pub fn glauber_gf(params: &GlauberParams, order: usize) -> SeriesPoly {
    let u0 = params.u0();
    // (gamma^2 + 2 gamma W (1-z))^{1/2} - gamma = gamma [ (1 + u0 (1-z))^{1/2} - 1 ]
    let inner = SeriesPoly::from_fn(order, |k| match k {
        0 => 1.0 + u0,
        1 => -u0,
        _ => 0.0,
    });
    let mut root = inner.sqrt().expect("1 + 2W/gamma > 0");
    let mut coeffs = root.coeffs().to_vec();
    coeffs[0] = u0 / ((1.0 + u0).sqrt() + 1.0);
    root = SeriesPoly::new(coeffs);
    root.scale(-params.gamma * params.tau).exp()
}

/// Generating function `exp(exponent(tau))` for a caller-supplied exponent
/// series; used for multiplicativity checks of modified statistics.
pub fn glauber_series_with(exponent: impl Fn(f64) -> SeriesPoly, tau: f64) -> SeriesPoly {
    exponent(tau).exp()
}

fn clamp(c: f64) -> f64 {
    if c < 0.0 && c > -CLAMP_TOLERANCE {
        0.0
    } else {
        c
    }
}

/// `p_0..p_order` of Glauber's statistics in sampling time `tau`.
pub fn glauber_pmf(params: &GlauberParams, order: usize) -> Result<PmfTable> {
    let raw = glauber_gf(params, order);
    let probs: Vec<f64> = raw.coeffs().iter().map(|&c| clamp(c)).collect();
    PmfTable::from_prefix(probs, Some(params.tail_bound(order)))
}

pub fn glauber_ln_prefix(params: &GlauberParams, order: usize) -> Vec<f64> {
    glauber_gf(params, order)
        .coeffs()
        .iter()
        .map(|&c| {
            let c = clamp(c);
            if c > 0.0 {
                c.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect()
}

/// Relative coefficient residual between `series(tau1 + tau2)` and
/// `series(tau1) * series(tau2)`.
pub fn verify_multiplicativity_with(
    series: impl Fn(f64) -> SeriesPoly,
    tau1: f64,
    tau2: f64,
) -> f64 {
    let whole = series(tau1 + tau2);
    let product = &series(tau1) * &series(tau2);
    (0..=whole.order())
        .map(|k| {
            let (a, b) = (whole.coeff(k), product.coeff(k));
            (a - b).abs() / a.abs().max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// Coefficient residual of `P(tau1 + tau2) = P(tau1) P(tau2)` for the
/// Lorentzian-line statistics.
pub fn verify_gf_multiplicativity(
    params: &GlauberParams,
    tau1: f64,
    tau2: f64,
    order: usize,
) -> Result<f64> {
    params.with_tau(tau1)?;
    params.with_tau(tau2)?;
    Ok(verify_multiplicativity_with(
        |tau| glauber_gf(&params.with_tau(tau).expect("tau > 0"), order),
        tau1,
        tau2,
    ))
}
