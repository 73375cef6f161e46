//! Photon-number statistics under flux splitting.
//!
//! A light beam occupying a phase-space volume `S = A + B` (in units of
//! coherence volume) is split into two parts with probabilities
//! `alpha = A/S` and `beta = B/S`. For any photon statistics obeying the
//! convolution system `p_n(A+B) = sum_k p_k(A) p_{n-k}(B)`, the law of `k`
//! photons in `A` given `n` photons in `S` is the generalized binomial
//! distribution `W(k, n-k) = p_k(A) p_{n-k}(B) / p_n(A+B)`.
//!
//! - [`dist`]: closed-form pmfs (Poisson, Bose-Einstein in arbitrary volume,
//!   binomial, Polya) and the identity checks.
//! - [`series`]: truncated power series, the rising-factorial generating
//!   function and Glauber's Lorentzian-line statistics.
//! - [`montecarlo`]: reproducible stochastic oracles.
//! - [`scenarios`]: diaphragm, beamsplitter, detector and neutral filter as
//!   one splitting device.
//! - [`figures`]: data tables for the two-, three- and fifty-photon curves.

pub mod dist;
mod error;
pub mod figures;
pub mod montecarlo;
pub mod scenarios;
pub mod series;

pub use dist::{
    be_pmf, binomial_pmf, degeneracy_from_temperature, gbd, gbd_table, log_rising_factorial,
    poisson_pmf, polya_pmf, split_probabilities, three_photon_table, two_photon_table,
    verify_convolution, verify_vandermonde, DegeneracyParam, GbdTable, PhaseVolume,
    PhotonStatistics, PmfTable, SplitSpec, StatModel,
};
pub use error::{Error, Result};
pub use series::{GlauberParams, SeriesPoly};
