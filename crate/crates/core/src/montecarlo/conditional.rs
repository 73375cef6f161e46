use rayon::prelude::*;
use serde::Serialize;

use super::samplers::{CountSampler, ModelSampler};
use super::{EmpiricalHist, RngStream};
use crate::dist::{PhaseVolume, StatModel};
use crate::error::{Error, Result};

/// Parallel shards per round of [`empirical_gbd`].
const ROUND_SHARDS: u64 = 16;
/// Raw pair draws per shard per round.
const SHARD_PAIRS: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalConfig {
    /// Stop once at least this many pairs with `X + Y = n` were kept.
    pub target_accepted: u64,
    /// Give up after this many raw pair draws.
    pub draw_budget: u64,
}

impl Default for ConditionalConfig {
    fn default() -> Self {
        Self {
            target_accepted: 100_000,
            draw_budget: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionalSample {
    /// Histogram of `X` over the kept pairs.
    pub hist: EmpiricalHist,
    /// Raw pair draws.
    pub draws: u64,
    pub acceptance_rate: f64,
}

/// Conditional law of `X ~ p(A)` given `X + Y = n` with `Y ~ p(B)`
/// independent, by rejection.
///
/// Rounds of [`ROUND_SHARDS`] shards run on consecutive substreams of
/// `stream` until `target_accepted` is reached; a round always completes, so
/// the histogram can hold slightly more than the target. Fails with
/// [`Error::BudgetExhausted`] instead of returning an undersized sample.
pub fn empirical_gbd(
    model: &StatModel,
    a: PhaseVolume,
    b: PhaseVolume,
    n: u64,
    config: ConditionalConfig,
    stream: RngStream,
) -> Result<ConditionalSample> {
    let sa = ModelSampler::new(model, a)?;
    let sb = ModelSampler::new(model, b)?;
    let mut hist = EmpiricalHist::new();
    let mut draws = 0u64;
    let mut round = 0u64;
    while hist.total() < config.target_accepted {
        let remaining = config.draw_budget.saturating_sub(draws);
        if remaining == 0 {
            return Err(Error::BudgetExhausted {
                accepted: hist.total(),
                target: config.target_accepted,
                draws,
                acceptance_rate: hist.total() as f64 / draws.max(1) as f64,
            });
        }
        let round_pairs = remaining.min(ROUND_SHARDS * SHARD_PAIRS);
        let shards = round_pairs.div_ceil(SHARD_PAIRS);
        let parts: Vec<EmpiricalHist> = (0..shards)
            .into_par_iter()
            .map(|j| {
                let index = (round * ROUND_SHARDS + j) as u32;
                let mut rng = stream.substream(index).generator();
                let len = SHARD_PAIRS.min(round_pairs - j * SHARD_PAIRS);
                let mut h = EmpiricalHist::new();
                for _ in 0..len {
                    let x = sa.sample(&mut rng);
                    let y = sb.sample(&mut rng);
                    if x + y == n {
                        h.record(x);
                    }
                }
                h
            })
            .collect();
        for p in &parts {
            hist.merge(p);
        }
        draws += round_pairs;
        round += 1;
    }
    let acceptance_rate = hist.total() as f64 / draws as f64;
    Ok(ConditionalSample {
        hist,
        draws,
        acceptance_rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vol(x: f64) -> PhaseVolume {
        PhaseVolume::new(x).unwrap()
    }

    fn freqs_close(h: &EmpiricalHist, expected: &[f64], tol: f64) {
        for (k, e) in expected.iter().enumerate() {
            assert!(
                (h.frequency(k) - e).abs() < tol,
                "k={k}: {} vs {e}",
                h.frequency(k)
            );
        }
    }

    #[test]
    fn poisson_conditional_is_binomial() {
        let model = StatModel::poisson(1.0).unwrap();
        let s = empirical_gbd(
            &model,
            vol(1.0),
            vol(1.0),
            2,
            Default::default(),
            RngStream::new(42, 0),
        )
        .unwrap();
        assert!(s.hist.total() >= 100_000);
        freqs_close(&s.hist, &[0.25, 0.5, 0.25], 0.005);
    }

    #[test]
    fn be_conditional_is_polya() {
        let model = StatModel::bose_einstein(1.0).unwrap();
        let s = empirical_gbd(
            &model,
            vol(0.5),
            vol(0.5),
            2,
            Default::default(),
            RngStream::new(42, 1),
        )
        .unwrap();
        freqs_close(&s.hist, &[0.375, 0.25, 0.375], 0.005);
    }

    #[test]
    fn be_one_photon_even_split() {
        for (i, &(half, w)) in [(0.05, 3.0), (2.0, 0.4)].iter().enumerate() {
            let model = StatModel::bose_einstein(w).unwrap();
            let stream = RngStream::new(42, 10 + i as u64);
            let s =
                empirical_gbd(&model, vol(half), vol(half), 1, Default::default(), stream).unwrap();
            freqs_close(&s.hist, &[0.5, 0.5], 0.005);
        }
    }

    #[test]
    fn budget_exhaustion_is_loud() {
        let model = StatModel::poisson(0.01).unwrap();
        let config = ConditionalConfig {
            target_accepted: 1000,
            draw_budget: 100_000,
        };
        let err = empirical_gbd(&model, vol(1.0), vol(1.0), 12, config, RngStream::new(1, 0))
            .unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { draws: 100_000, .. }));
    }

    #[test]
    fn reproducible() {
        let model = StatModel::bose_einstein(2.0).unwrap();
        let config = ConditionalConfig {
            target_accepted: 20_000,
            draw_budget: 10_000_000,
        };
        let run =
            || empirical_gbd(&model, vol(1.5), vol(0.5), 3, config, RngStream::new(7, 2)).unwrap();
        assert_eq!(run(), run());
    }
}
