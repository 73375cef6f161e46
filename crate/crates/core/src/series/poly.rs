use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{domain, Result};

/// A power series `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`.
///
/// Every operation truncates at the order of its result, and coefficient `k`
/// of a result depends only on input coefficients `0..=k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPoly {
    coeffs: Vec<f64>,
}

impl SeriesPoly {
    /// Panics on an empty coefficient vector; a series has at least `c_0`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the constant term"
        );
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![0.0; order + 1],
        }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1.0, order)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> f64) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Pads with zeros or drops high coefficients.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_fn(order, |k| self.coeff(k))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Substitutes `z -> factor * z`.
    pub fn scale_argument(&self, factor: f64) -> Self {
        let mut power = 1.0;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * power;
                power *= factor;
                v
            })
            .collect();
        Self { coeffs }
    }

    /// Cauchy product truncated at the larger of the two orders.
    pub fn mul_trunc(&self, other: &Self) -> Self {
        let order = self.order().max(other.order());
        Self::from_fn(order, |k| {
            let lo = k.saturating_sub(other.order());
            let hi = k.min(self.order());
            (lo..=hi)
                .map(|j| self.coeffs[j] * other.coeffs[k - j])
                .sum()
        })
    }

    /// `sqrt(a)` with `b_0 = sqrt(a_0)` and
    /// `b_k = (a_k - sum_{j=1}^{k-1} b_j b_{k-j}) / (2 b_0)`.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.is_nan() || a0 <= 0.0 {
            return Err(domain(format!("series sqrt needs c_0 > 0, got {a0}")));
        }
        let n = self.order();
        let mut b = vec![0.0; n + 1];
        b[0] = a0.sqrt();
        let two_b0 = 2.0 * b[0];
        for k in 1..=n {
            let cross: f64 = (1..k).map(|j| b[j] * b[k - j]).sum();
            b[k] = (self.coeffs[k] - cross) / two_b0;
        }
        Ok(Self { coeffs: b })
    }

    /// `exp(a)` with `b_0 = e^{a_0}` and `k b_k = sum_{j=1}^{k} j a_j b_{k-j}`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut b = vec![0.0; n + 1];
        b[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let acc: f64 = (1..=k).map(|j| j as f64 * self.coeffs[j] * b[k - j]).sum();
            b[k] = acc / k as f64;
        }
        Self { coeffs: b }
    }

    /// `ln(a)` with `b_0 = ln a_0` and
    /// `a_0 k b_k = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}`.
    pub fn ln(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if a0.is_nan() || a0 <= 0.0 {
            return Err(domain(format!("series log needs c_0 > 0, got {a0}")));
        }
        let n = self.order();
        let mut b = vec![0.0; n + 1];
        b[0] = a0.ln();
        for k in 1..=n {
            let acc: f64 = (1..k).map(|j| j as f64 * b[j] * self.coeffs[k - j]).sum();
            b[k] = (k as f64 * self.coeffs[k] - acc) / (k as f64 * a0);
        }
        Ok(Self { coeffs: b })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let order = self.order().max(other.order());
        Self::from_fn(order, |k| f(self.coeff(k), other.coeff(k)))
    }

    /// Largest `|a_k - b_k|` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let order = self.order().max(other.order());
        (0..=order)
            .map(|k| (self.coeff(k) - other.coeff(k)).abs())
            .fold(0.0, f64::max)
    }
}

impl Add for &SeriesPoly {
    type Output = SeriesPoly;

    fn add(self, rhs: Self) -> SeriesPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SeriesPoly {
    type Output = SeriesPoly;

    fn sub(self, rhs: Self) -> SeriesPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &SeriesPoly {
    type Output = SeriesPoly;

    fn mul(self, rhs: Self) -> SeriesPoly {
        self.mul_trunc(rhs)
    }
}
