use super::SeriesPoly;
use crate::error::{domain, Result};

/// Maclaurin coefficients of `(1 - z)^{-A}`: `f_k(A) = A^(k) / k!`.
pub fn rising_factorial_gf(a: f64, order: usize) -> Result<SeriesPoly> {
    if !(a.is_finite() && a > 0.0) {
        return Err(domain(format!(
            "generating-function exponent must be > 0, got {a}"
        )));
    }
    let mut f = 1.0;
    Ok(SeriesPoly::from_fn(order, |k| {
        if k > 0 {
            f *= (a + (k - 1) as f64) / k as f64;
        }
        f
    }))
}

/// Largest relative coefficient residual of
/// `(1-z)^{-(A+B)} = (1-z)^{-A} (1-z)^{-B}` at the given order.
pub fn verify_gf_multiplicativity_rising(a: f64, b: f64, order: usize) -> Result<f64> {
    let lhs = rising_factorial_gf(a + b, order)?;
    let rhs = &rising_factorial_gf(a, order)? * &rising_factorial_gf(b, order)?;
    Ok((0..=order)
        .map(|k| (lhs.coeff(k) - rhs.coeff(k)).abs() / lhs.coeff(k))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{be_pmf, ln_factorial, log_rising_factorial, DegeneracyParam, PhaseVolume};

    #[test]
    fn geometric_and_linear() {
        let g = rising_factorial_gf(1.0, 20).unwrap();
        assert!(g.coeffs().iter().all(|&c| c == 1.0));
        let g = rising_factorial_gf(2.0, 20).unwrap();
        for k in 0..=20 {
            assert!((g.coeff(k) - (k + 1) as f64).abs() < 1e-12);
        }
        assert!(rising_factorial_gf(0.0, 3).is_err());
    }

    #[test]
    fn coefficients_match_log_rising_factorial() {
        for &a in &[0.5, 1.0, 2.5, 7.0, 33.3] {
            let g = rising_factorial_gf(a, 100).unwrap();
            for k in 0..=100u64 {
                let exact = (log_rising_factorial(a, k).unwrap() - ln_factorial(k)).exp();
                let c = g.coeff(k as usize);
                assert!((c - exact).abs() <= 1e-12 * exact, "a={a} k={k}");
            }
        }
    }

    #[test]
    fn multiplicativity() {
        for &a in &[0.5, 1.0, 2.5, 7.0] {
            for &b in &[0.5, 1.0, 2.5, 7.0] {
                let r = verify_gf_multiplicativity_rising(a, b, 100).unwrap();
                assert!(r < 1e-11, "a={a} b={b}: {r}");
            }
        }
    }

    #[test]
    fn substituted_gf_reproduces_bose_einstein() {
        for &(a, w) in &[(0.6, 1.5), (1.0, 1.0), (4.2, 0.3)] {
            let q = w / (1.0 + w);
            let pmf = rising_factorial_gf(a, 60)
                .unwrap()
                .scale_argument(q)
                .scale((1.0 + w).powf(-a));
            let vol = PhaseVolume::new(a).unwrap();
            let deg = DegeneracyParam::new(w).unwrap();
            for k in 0..=60 {
                let p = be_pmf(k as u64, vol, deg);
                assert!((pmf.coeff(k) - p).abs() <= 1e-11 * p, "a={a} w={w} k={k}");
            }
        }
    }
}
