use rand::Rng;
use rand_distr::{Beta, Binomial, Distribution, Gamma, Poisson};
use rayon::prelude::*;

use super::{EmpiricalHist, RngStream, StreamRng};
use crate::dist::{PhaseVolume, SplitSpec, StatModel};
use crate::error::{domain, Result};

/// Draws per shard in [`sample_histogram`].
pub const SHARD_DRAWS: u64 = 1 << 16;

/// A sampler of nonnegative integer counts.
pub trait CountSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64;
}

fn poisson_draw<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean)
        .expect("finite positive mean")
        .sample(rng) as u64
}

#[derive(Debug, Clone)]
pub struct PoissonSampler {
    dist: Option<Poisson<f64>>,
}

impl PoissonSampler {
    pub fn new(mean: f64) -> Result<Self> {
        if !(mean.is_finite() && mean >= 0.0) {
            return Err(domain(format!(
                "Poisson mean must be finite and >= 0, got {mean}"
            )));
        }
        let dist = if mean > 0.0 {
            Some(Poisson::new(mean).map_err(|e| domain(e.to_string()))?)
        } else {
            None
        };
        Ok(Self { dist })
    }
}

impl CountSampler for PoissonSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.dist.as_ref().map_or(0, |d| d.sample(rng) as u64)
    }
}

/// Bose-Einstein counts in volume `A` as a Poisson count whose mean is
/// `Gamma(shape = A, scale = w)`.
///
/// Shapes below one use the boosted draw `Gamma(A+1) * U^{1/A}`.
#[derive(Debug, Clone)]
pub struct NegativeBinomialSampler {
    gamma: Option<Gamma<f64>>,
}

impl NegativeBinomialSampler {
    pub fn new(volume: PhaseVolume, w: f64) -> Result<Self> {
        if !(w.is_finite() && w >= 0.0) {
            return Err(domain(format!(
                "degeneracy must be finite and >= 0, got {w}"
            )));
        }
        let gamma = if w > 0.0 {
            Some(Gamma::new(volume.cells(), w).map_err(|e| domain(e.to_string()))?)
        } else {
            None
        };
        Ok(Self { gamma })
    }
}

impl CountSampler for NegativeBinomialSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match &self.gamma {
            Some(g) => {
                let mean = g.sample(rng);
                poisson_draw(mean, rng)
            }
            None => 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BinomialSampler {
    dist: Binomial,
}

impl BinomialSampler {
    pub fn new(n: u64, split: SplitSpec) -> Result<Self> {
        let dist = Binomial::new(n, split.alpha()).map_err(|e| domain(e.to_string()))?;
        Ok(Self { dist })
    }
}

impl CountSampler for BinomialSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.dist.sample(rng)
    }
}

/// Polya counts as `k ~ Binomial(n, p)` with `p ~ Beta(alpha S, beta S)`.
#[derive(Debug, Clone)]
pub struct PolyaSampler {
    n: u64,
    beta: Beta<f64>,
}

impl PolyaSampler {
    pub fn new(n: u64, split: SplitSpec, s: PhaseVolume) -> Result<Self> {
        let beta = Beta::new(split.alpha() * s.cells(), split.beta() * s.cells())
            .map_err(|e| domain(e.to_string()))?;
        Ok(Self { n, beta })
    }
}

impl CountSampler for PolyaSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let p = self.beta.sample(rng);
        if self.n == 0 {
            return 0;
        }
        // Beta draws can round to the closed endpoints.
        let p = p.clamp(0.0, 1.0);
        Binomial::new(self.n, p).expect("p in [0, 1]").sample(rng)
    }
}

/// Per-volume sampler matching a [`StatModel`] family.
#[derive(Debug, Clone)]
pub enum ModelSampler {
    Poisson(PoissonSampler),
    NegativeBinomial(NegativeBinomialSampler),
}

impl ModelSampler {
    /// Glauber statistics has no structural sampler here.
    pub fn new(model: &StatModel, volume: PhaseVolume) -> Result<Self> {
        match *model {
            StatModel::Poisson { density } => Ok(ModelSampler::Poisson(PoissonSampler::new(
                density * volume.cells(),
            )?)),
            StatModel::BoseEinstein { w } => Ok(ModelSampler::NegativeBinomial(
                NegativeBinomialSampler::new(volume, w)?,
            )),
            StatModel::Glauber { .. } => {
                Err(domain("no structural sampler for Glauber statistics"))
            }
        }
    }
}

impl CountSampler for ModelSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match self {
            ModelSampler::Poisson(s) => s.sample(rng),
            ModelSampler::NegativeBinomial(s) => s.sample(rng),
        }
    }
}

pub fn sample_poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    Ok(PoissonSampler::new(mean)?.sample(rng))
}

pub fn sample_negative_binomial<R: Rng + ?Sized>(
    volume: PhaseVolume,
    w: f64,
    rng: &mut R,
) -> Result<u64> {
    Ok(NegativeBinomialSampler::new(volume, w)?.sample(rng))
}

pub fn sample_polya<R: Rng + ?Sized>(
    n: u64,
    split: SplitSpec,
    s: PhaseVolume,
    rng: &mut R,
) -> Result<u64> {
    Ok(PolyaSampler::new(n, split, s)?.sample(rng))
}

pub fn sample_binomial<R: Rng + ?Sized>(n: u64, split: SplitSpec, rng: &mut R) -> Result<u64> {
    Ok(BinomialSampler::new(n, split)?.sample(rng))
}

/// Histogram of `draws` samples, sharded over substreams of `stream` in
/// blocks of [`SHARD_DRAWS`]. The result depends only on `(stream, draws)`,
/// not on the number of worker threads.
pub fn sample_histogram<S>(sampler: &S, draws: u64, stream: RngStream) -> EmpiricalHist
where
    S: CountSampler + Sync,
{
    let shards = draws.div_ceil(SHARD_DRAWS);
    let parts: Vec<EmpiricalHist> = (0..shards)
        .into_par_iter()
        .map(|j| {
            let mut rng: StreamRng = stream.substream(j as u32).generator();
            let len = SHARD_DRAWS.min(draws - j * SHARD_DRAWS);
            let mut h = EmpiricalHist::new();
            for _ in 0..len {
                h.record(sampler.sample(&mut rng));
            }
            h
        })
        .collect();
    let mut total = EmpiricalHist::new();
    for p in &parts {
        total.merge(p);
    }
    total
}
