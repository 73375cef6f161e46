//! Stochastic oracles for the closed-form distributions.
//!
//! Samplers are structural: negative binomial as a Gamma-mixed Poisson,
//! Polya as a Beta-mixed binomial, and the generalized binomial law as the
//! conditional law of independent draws given their sum. None of them
//! evaluate the pmfs they are checked against.

mod conditional;
mod hist;
mod rng;
mod samplers;

pub use conditional::{empirical_gbd, ConditionalConfig, ConditionalSample};
pub use hist::{chi_square_pvalue, tv_distance, EmpiricalHist};
pub use rng::{RngStream, StreamRng, RNG_ALGORITHM};
pub use samplers::{
    sample_binomial, sample_histogram, sample_negative_binomial, sample_poisson, sample_polya,
    BinomialSampler, CountSampler, ModelSampler, NegativeBinomialSampler, PoissonSampler,
    PolyaSampler, SHARD_DRAWS,
};
