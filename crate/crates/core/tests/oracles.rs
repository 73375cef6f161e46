//! Monte Carlo samplers against the closed forms.

use photon_gbd::dist::{
    binomial_table, polya_table, PhaseVolume, PmfTable, SplitSpec, StatModel, TableExtent,
};
use photon_gbd::montecarlo::{
    chi_square_pvalue, empirical_gbd, sample_histogram, tv_distance, BinomialSampler,
    ConditionalConfig, EmpiricalHist, NegativeBinomialSampler, PoissonSampler, PolyaSampler,
    RngStream,
};

const M: u64 = 1_000_000;

fn vol(x: f64) -> PhaseVolume {
    PhaseVolume::new(x).unwrap()
}

fn split(a: f64) -> SplitSpec {
    SplitSpec::new(a).unwrap()
}

fn tv_bound(m: u64) -> f64 {
    3.0 / (m as f64).sqrt() + 0.002
}

#[test]
fn every_sampler_within_tv_bound() {
    let mut stream = 0;
    let mut next = || {
        stream += 1;
        RngStream::new(42, stream)
    };
    let check = |h: EmpiricalHist, p: PmfTable, what: &str| {
        let d = tv_distance(&h, &p);
        assert!(d < tv_bound(M), "{what}: TV {d}");
    };

    for &mean in &[0.3, 4.0, 60.0] {
        let table = StatModel::poisson(mean)
            .unwrap()
            .table(vol(1.0), TableExtent::default())
            .unwrap();
        let h = sample_histogram(&PoissonSampler::new(mean).unwrap(), M, next());
        check(h, table, "poisson");
    }
    for &(a, w) in &[(0.2, 3.0), (1.0, 1.0), (2.5, 0.7), (12.0, 0.5)] {
        let table = StatModel::bose_einstein(w)
            .unwrap()
            .table(vol(a), TableExtent::default())
            .unwrap();
        let h = sample_histogram(&NegativeBinomialSampler::new(vol(a), w).unwrap(), M, next());
        check(h, table, "negative binomial");
    }
    for &(n, alpha, s) in &[
        (1u64, 0.3, 5.0),
        (2, 0.5, 1.0),
        (10, 0.5, 0.2),
        (50, 0.5, 1e4),
    ] {
        let table = polya_table(n, split(alpha), vol(s)).into_pmf().unwrap();
        let h = sample_histogram(
            &PolyaSampler::new(n, split(alpha), vol(s)).unwrap(),
            M,
            next(),
        );
        check(h, table, "polya");
    }
    let table = binomial_table(20, split(0.55)).into_pmf().unwrap();
    let h = sample_histogram(&BinomialSampler::new(20, split(0.55)).unwrap(), M, next());
    check(h, table, "binomial");
}

#[test]
fn fifty_photons_in_large_volume_look_binomial() {
    let sampler = PolyaSampler::new(50, split(0.5), vol(1e4)).unwrap();
    let h = sample_histogram(&sampler, M, RngStream::new(42, 100));
    let binom = binomial_table(50, split(0.5)).into_pmf().unwrap();
    assert!(tv_distance(&h, &binom) < 0.01);
}

#[test]
fn conditional_thermal_split_is_polya() {
    let config = ConditionalConfig::default();
    for (i, &(n, s, w)) in [(2u64, 1.0, 1.0), (3, 2.0, 1.5), (10, 5.0, 2.0)]
        .iter()
        .enumerate()
    {
        let model = StatModel::bose_einstein(w).unwrap();
        let half = vol(s / 2.0);
        let sample = empirical_gbd(
            &model,
            half,
            half,
            n,
            config,
            RngStream::new(42, 200 + i as u64),
        )
        .unwrap();
        assert!(sample.hist.total() >= config.target_accepted);
        let polya = polya_table(n, split(0.5), vol(s)).into_pmf().unwrap();
        let binom = binomial_table(n, split(0.5)).into_pmf().unwrap();
        let p_polya = chi_square_pvalue(&sample.hist, &polya).unwrap();
        let p_binom = chi_square_pvalue(&sample.hist, &binom).unwrap();
        assert!(p_polya > 1e-3, "n={n} S={s}: p = {p_polya}");
        assert!(
            p_binom < 1e-6,
            "n={n} S={s}: binomial not rejected, p = {p_binom}"
        );
    }
}

#[test]
fn identical_seeds_give_identical_histograms() {
    let sampler = PolyaSampler::new(50, split(0.5), vol(1.0)).unwrap();
    let a = sample_histogram(&sampler, 300_000, RngStream::new(42, 7));
    let b = sample_histogram(&sampler, 300_000, RngStream::new(42, 7));
    assert_eq!(a, b);
    let model = StatModel::poisson(1.0).unwrap();
    let config = ConditionalConfig {
        target_accepted: 10_000,
        draw_budget: 10_000_000,
    };
    let run =
        || empirical_gbd(&model, vol(1.0), vol(1.0), 2, config, RngStream::new(42, 8)).unwrap();
    assert_eq!(run(), run());
}
