//! Flags that select a beam's statistics.

use clap::{Args, ValueEnum};
use photon_gbd::dist::StatModel;

use crate::output::Echo;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Poisson,
    Be,
    Glauber,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Poisson => "poisson",
            Family::Be => "be",
            Family::Glauber => "glauber",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelFlags {
    /// Statistics family.
    #[arg(long, value_enum)]
    pub model: Family,
    /// Photons per cell: Poisson density or Bose-Einstein degeneracy.
    #[arg(long)]
    pub w: Option<f64>,
    /// Glauber damping rate.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Glauber photon counting rate.
    #[arg(long)]
    pub photon_rate: Option<f64>,
}

pub fn require<T: Copy>(value: Option<T>, flag: &str, context: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{context} requires --{flag}")))
}

impl ModelFlags {
    pub fn resolve(&self) -> Result<StatModel, CliError> {
        let context = format!("--model {}", self.model.name());
        let model = match self.model {
            Family::Poisson => StatModel::poisson(require(self.w, "w", &context)?)?,
            Family::Be => StatModel::bose_einstein(require(self.w, "w", &context)?)?,
            Family::Glauber => StatModel::glauber(
                require(self.gamma, "gamma", &context)?,
                require(self.photon_rate, "photon-rate", &context)?,
            )?,
        };
        Ok(model)
    }

    /// Appends the flags that reproduce `model`.
    pub fn echo(model: &StatModel, echo: Echo) -> Echo {
        match *model {
            StatModel::Poisson { density } => echo.flag("model", "poisson").flag("w", density),
            StatModel::BoseEinstein { w } => echo.flag("model", "be").flag("w", w),
            StatModel::Glauber { gamma, photon_rate } => echo
                .flag("model", "glauber")
                .flag("gamma", gamma)
                .flag("photon-rate", photon_rate),
        }
    }
}
