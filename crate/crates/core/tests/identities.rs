use photon_gbd::dist::{
    binomial_pmf, binomial_table, gbd_table, polya_pmf, polya_table, three_photon_table,
    two_photon_table, PhaseVolume, SplitSpec, StatModel,
};
use photon_gbd::figures::log_grid;
use photon_gbd::series::{
    glauber_gf, rising_factorial_gf, verify_gf_multiplicativity_rising, GlauberParams,
};
use photon_gbd::split_probabilities;
use proptest::prelude::*;

fn vol(x: f64) -> PhaseVolume {
    PhaseVolume::new(x).unwrap()
}

fn split(a: f64) -> SplitSpec {
    SplitSpec::new(a).unwrap()
}

fn tv(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn models(w: f64) -> [StatModel; 3] {
    [
        StatModel::poisson(w).unwrap(),
        StatModel::bose_einstein(w).unwrap(),
        StatModel::glauber(1.0, w).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gbd_is_normalized(
        a in 0.05f64..20.0,
        b in 0.05f64..20.0,
        w in 0.05f64..5.0,
        n in 0u64..=200,
    ) {
        for model in &models(w)[..2] {
            let t = gbd_table(n, model, vol(a), vol(b)).unwrap();
            prop_assert!((t.total() - 1.0).abs() <= 1e-10, "{model:?} n={n}: {}", t.total());
            prop_assert!(t.values().iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn glauber_gbd_is_normalized(a in 0.1f64..5.0, b in 0.1f64..5.0, rate in 0.1f64..5.0, n in 0u64..=40) {
        let model = StatModel::glauber(1.3, rate).unwrap();
        let t = gbd_table(n, &model, vol(a), vol(b)).unwrap();
        prop_assert!((t.total() - 1.0).abs() <= 1e-10, "n={n}: {}", t.total());
    }

    #[test]
    fn poisson_split_is_binomial(
        a in 0.05f64..50.0,
        b in 0.05f64..50.0,
        w in 0.01f64..3.0,
        n in 0u64..=100,
    ) {
        let model = StatModel::poisson(w).unwrap();
        let sp = split_probabilities(vol(a), vol(b)).unwrap();
        let t = gbd_table(n, &model, vol(a), vol(b)).unwrap();
        for k in 0..=n {
            prop_assert!((t.get(k) - binomial_pmf(k, n, sp)).abs() < 1e-13);
        }
    }

    #[test]
    fn polya_symmetry(alpha in 0.01f64..0.99, s in 0.001f64..1e4, n in 0u64..=120, k_frac in 0.0f64..=1.0) {
        let k = (k_frac * n as f64).round() as u64;
        let sp = split(alpha);
        let p = polya_pmf(k, n, sp, vol(s)).unwrap();
        let q = polya_pmf(n - k, n, sp.swapped(), vol(s)).unwrap();
        prop_assert!((p - q).abs() <= 1e-13);
    }

    #[test]
    fn closed_forms_agree(alpha in 0.01f64..0.99, s in 0.001f64..1e6) {
        let sp = split(alpha);
        let two = two_photon_table(sp, vol(s));
        let three = three_photon_table(sp, vol(s));
        for k in 0..=2 {
            let p = polya_pmf(k, 2, sp, vol(s)).unwrap();
            prop_assert!((two.get(k) - p).abs() <= 1e-12 * p);
        }
        for k in 0..=3 {
            let p = polya_pmf(k, 3, sp, vol(s)).unwrap();
            prop_assert!((three.get(k) - p).abs() <= 1e-12 * p);
        }
    }

    #[test]
    fn thermal_gbd_matches_closed_forms(alpha in 0.01f64..0.99, s in 0.001f64..1e4, w in 0.01f64..10.0) {
        let sp = split(alpha);
        let model = StatModel::bose_einstein(w).unwrap();
        let (a, b) = (vol(alpha * s), vol((1.0 - alpha) * s));
        let two = two_photon_table(sp, vol(s));
        let three = three_photon_table(sp, vol(s));
        let g2 = gbd_table(2, &model, a, b).unwrap();
        let g3 = gbd_table(3, &model, a, b).unwrap();
        for k in 0..=2 {
            prop_assert!((g2.get(k) - two.get(k)).abs() <= 1e-10 * two.get(k));
        }
        for k in 0..=3 {
            prop_assert!((g3.get(k) - three.get(k)).abs() <= 1e-10 * three.get(k));
        }
    }
}

#[test]
fn degeneracy_drops_out_of_thermal_split() {
    let (a, b) = (vol(1.7), vol(0.9));
    let sp = split_probabilities(a, b).unwrap();
    let low = StatModel::bose_einstein(0.3).unwrap();
    let high = StatModel::bose_einstein(2.0).unwrap();
    for n in [1u64, 2, 7, 40, 150] {
        let t1 = gbd_table(n, &low, a, b).unwrap();
        let t2 = gbd_table(n, &high, a, b).unwrap();
        for k in 0..=n {
            let p = polya_pmf(k, n, sp, a + b).unwrap();
            assert!(
                (t1.get(k) - t2.get(k)).abs() <= 1e-11 * t2.get(k),
                "n={n} k={k}"
            );
            assert!((t1.get(k) - p).abs() <= 1e-11 * p);
        }
    }
}

#[test]
fn classical_limit_is_approached_monotonically() {
    let sp = split(0.5);
    let binom = binomial_table(50, sp);
    let dists: Vec<f64> = [10.0, 1e2, 1e3, 1e4]
        .iter()
        .map(|&s| tv(polya_table(50, sp, vol(s)).values(), binom.values()))
        .collect();
    assert!(dists.windows(2).all(|w| w[1] < w[0]), "{dists:?}");
    assert!(dists[3] < 0.05);
}

#[test]
fn one_photon_ignores_volume() {
    for &alpha in &[0.1, 0.5, 0.55, 0.93] {
        for &s in &[1e-3, 1.0, 1e3] {
            let p = polya_pmf(1, 1, split(alpha), vol(s)).unwrap();
            assert!((p - alpha).abs() <= 1e-14, "alpha={alpha} S={s}");
        }
    }
}

#[test]
fn two_photon_bunching_is_monotone_in_volume() {
    for &alpha in &[0.5, 0.3] {
        let sp = split(alpha);
        let rows: Vec<_> = log_grid(1e-2, 1e2, 81)
            .unwrap()
            .into_iter()
            .map(|s| polya_table(2, sp, vol(s)))
            .collect();
        for pair in rows.windows(2) {
            assert!(pair[1].get(2) < pair[0].get(2));
            assert!(pair[1].get(1) > pair[0].get(1));
        }
    }
}

#[test]
fn rising_gf_multiplicativity_grid() {
    let vals = [0.5, 1.0, 2.5, 7.0];
    for &a in &vals {
        for &b in &vals {
            let r = verify_gf_multiplicativity_rising(a, b, 100).unwrap();
            assert!(r < 1e-11, "a={a} b={b}: {r}");
        }
    }
    let g = rising_factorial_gf(0.5, 10).unwrap();
    assert!((g.coeff(2) - 0.375).abs() < 1e-16);
}

#[test]
fn glauber_coefficients_nonnegative_on_grid() {
    let grid = [0.1, 0.3, 1.0, 3.0, 10.0];
    for &g in &grid {
        for &w in &grid {
            for &t in &grid {
                let raw = glauber_gf(&GlauberParams::new(g, w, t).unwrap(), 64);
                assert!(raw.coeffs().iter().all(|&c| c >= -1e-12), "{g} {w} {t}");
            }
        }
    }
}

#[test]
fn glauber_truncation_stability() {
    for &(g, w, t) in &[(0.1, 10.0, 10.0), (1.0, 1.0, 1.0), (10.0, 0.1, 0.1)] {
        let p = GlauberParams::new(g, w, t).unwrap();
        for order in [10usize, 40, 64] {
            let lo = glauber_gf(&p, order);
            let hi = glauber_gf(&p, order + 10);
            for k in 0..=order {
                let scale = lo.coeff(k).abs().max(f64::MIN_POSITIVE);
                assert!((lo.coeff(k) - hi.coeff(k)).abs() <= 1e-13 * scale);
            }
        }
    }
}
