//! Truncated power series and the generating-function identities built on
//! them.

mod gf;
mod glauber;
mod poly;

pub use gf::{rising_factorial_gf, verify_gf_multiplicativity_rising};
pub use glauber::{
    glauber_gf, glauber_ln_prefix, glauber_pmf, glauber_series_with, verify_gf_multiplicativity,
    verify_multiplicativity_with, GlauberParams, DEFAULT_ORDER,
};
pub use poly::SeriesPoly;
