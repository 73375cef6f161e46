//! Monte Carlo histograms against the analytic distributions.

use std::path::Path;

use clap::{ArgGroup, Args};
use photon_gbd::dist::{
    binomial_table, gbd_table, polya_table, PhaseVolume, PmfTable, SplitSpec, StatModel,
    TableExtent,
};
use photon_gbd::montecarlo::{
    chi_square_pvalue, empirical_gbd, sample_histogram, tv_distance, BinomialSampler,
    ConditionalConfig, EmpiricalHist, NegativeBinomialSampler, PoissonSampler, PolyaSampler,
    RngStream, RNG_ALGORITHM,
};
use serde::Serialize;

use crate::model_args::{require, ModelFlags};
use crate::output::{emit, render_json, Echo, SCHEMA_VERSION};
use crate::{CliError, Status};

/// Stream id under `--seed`; every sampling command uses this one.
const STREAM: u64 = 0;

#[derive(Debug, Args)]
#[command(group(
    ArgGroup::new("target")
        .required(true)
        .args(["polya", "poisson", "negbin", "binomial", "gbd"])
))]
pub struct SampleArgs {
    /// Beta-binomial split of n photons from a thermal volume S.
    #[arg(long)]
    pub polya: bool,
    /// Poisson counts with the given mean.
    #[arg(long)]
    pub poisson: bool,
    /// Bose-Einstein counts in volume A with degeneracy w.
    #[arg(long)]
    pub negbin: bool,
    /// Binomial split of n photons.
    #[arg(long)]
    pub binomial: bool,
    /// Counts in A given n photons in A + B, by rejection under --model.
    #[arg(long)]
    pub gbd: bool,

    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long = "S")]
    pub s: Option<f64>,
    #[arg(long)]
    pub mean: Option<f64>,
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long)]
    pub w: Option<f64>,
    /// Statistics family for --gbd (poisson or be).
    #[arg(long, value_enum)]
    pub model: Option<crate::model_args::Family>,

    /// Draws; for --gbd, accepted pairs.
    #[arg(long = "M", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1000..))]
    pub m: u64,
    /// Raw pair draws allowed for --gbd before giving up.
    #[arg(long, default_value_t = 100_000_000)]
    pub budget: u64,
    #[arg(long, env = "PHOTON_GBD_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Exit 1 when the total variation distance exceeds this.
    #[arg(long)]
    pub max_tv: Option<f64>,
    /// Exit 1 when the chi-square p-value falls below this.
    #[arg(long)]
    pub min_p: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Bin {
    k: usize,
    count: u64,
    empirical: f64,
    analytic: f64,
}

#[derive(Debug, Serialize)]
struct Comparison {
    tv: f64,
    chi_square_p: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Rng {
    algorithm: &'static str,
    seed: u64,
    stream: u64,
}

#[derive(Debug, Serialize)]
struct Conditional {
    raw_draws: u64,
    acceptance_rate: f64,
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    target: &'static str,
    rng: Rng,
    samples: u64,
    analytic_tail_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditional: Option<Conditional>,
    histogram: Vec<Bin>,
    tv: f64,
    chi_square_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    binomial_reference: Option<Comparison>,
    pass: bool,
}

fn compare(hist: &EmpiricalHist, table: &PmfTable) -> Comparison {
    let chi_square_p = match chi_square_pvalue(hist, table) {
        Ok(p) => Some(p),
        Err(e) => {
            eprintln!("photon-gbd: chi-square test skipped: {e}");
            None
        }
    };
    Comparison {
        tv: tv_distance(hist, table),
        chi_square_p,
    }
}

fn split(alpha: f64) -> Result<SplitSpec, CliError> {
    Ok(SplitSpec::new(alpha)?)
}

fn vol(x: f64) -> Result<PhaseVolume, CliError> {
    Ok(PhaseVolume::new(x)?)
}

pub fn run(args: &SampleArgs, out: Option<&Path>) -> Result<Status, CliError> {
    let stream = RngStream::new(args.seed, STREAM);
    let echo = Echo::new("sample");
    let mut conditional = None;
    let mut binomial_reference = None;

    let (target, echo, hist, table) = if args.polya {
        let ctx = "--polya";
        let n = require(args.n, "n", ctx)?;
        let alpha = require(args.alpha, "alpha", ctx)?;
        let s = require(args.s, "S", ctx)?;
        let sampler = PolyaSampler::new(n, split(alpha)?, vol(s)?)?;
        let echo = echo
            .word("--polya")
            .flag("n", n)
            .flag("alpha", alpha)
            .flag("S", s);
        let hist = sample_histogram(&sampler, args.m, stream);
        (
            "polya",
            echo,
            hist,
            polya_table(n, split(alpha)?, vol(s)?).into_pmf()?,
        )
    } else if args.poisson {
        let mean = require(args.mean, "mean", "--poisson")?;
        let sampler = PoissonSampler::new(mean)?;
        let table = StatModel::poisson(mean)?.table(vol(1.0)?, TableExtent::default())?;
        let hist = sample_histogram(&sampler, args.m, stream);
        (
            "poisson",
            echo.word("--poisson").flag("mean", mean),
            hist,
            table,
        )
    } else if args.negbin {
        let ctx = "--negbin";
        let a = require(args.a, "A", ctx)?;
        let w = require(args.w, "w", ctx)?;
        let sampler = NegativeBinomialSampler::new(vol(a)?, w)?;
        let table = StatModel::bose_einstein(w)?.table(vol(a)?, TableExtent::default())?;
        let hist = sample_histogram(&sampler, args.m, stream);
        (
            "negbin",
            echo.word("--negbin").flag("A", a).flag("w", w),
            hist,
            table,
        )
    } else if args.binomial {
        let ctx = "--binomial";
        let n = require(args.n, "n", ctx)?;
        let alpha = require(args.alpha, "alpha", ctx)?;
        let sampler = BinomialSampler::new(n, split(alpha)?)?;
        let hist = sample_histogram(&sampler, args.m, stream);
        let echo = echo.word("--binomial").flag("n", n).flag("alpha", alpha);
        (
            "binomial",
            echo,
            hist,
            binomial_table(n, split(alpha)?).into_pmf()?,
        )
    } else {
        let ctx = "--gbd";
        let family = require(args.model, "model", ctx)?;
        let flags = ModelFlags {
            model: family,
            w: args.w,
            gamma: None,
            photon_rate: None,
        };
        let model = flags.resolve()?;
        let n = require(args.n, "n", ctx)?;
        let (a, b) = (require(args.a, "A", ctx)?, require(args.b, "B", ctx)?);
        let config = ConditionalConfig {
            target_accepted: args.m,
            draw_budget: args.budget,
        };
        let sample = empirical_gbd(&model, vol(a)?, vol(b)?, n, config, stream)?;
        conditional = Some(Conditional {
            raw_draws: sample.draws,
            acceptance_rate: sample.acceptance_rate,
        });
        let binomial =
            binomial_table(n, photon_gbd::split_probabilities(vol(a)?, vol(b)?)?).into_pmf()?;
        binomial_reference = Some(compare(&sample.hist, &binomial));
        let table = gbd_table(n, &model, vol(a)?, vol(b)?)?.into_pmf()?;
        let echo = ModelFlags::echo(&model, echo.word("--gbd"))
            .flag("A", a)
            .flag("B", b)
            .flag("n", n)
            .flag("budget", args.budget);
        ("gbd", echo, sample.hist, table)
    };
    let echo = echo
        .flag("M", args.m)
        .flag("seed", args.seed)
        .opt("max-tv", args.max_tv)
        .opt("min-p", args.min_p);

    let main = compare(&hist, &table);
    let len = hist.counts().len().max(table.len());
    let histogram = (0..len)
        .map(|k| Bin {
            k,
            count: hist.count(k),
            empirical: hist.frequency(k),
            analytic: table.get(k),
        })
        .collect();
    let tv_ok = args.max_tv.is_none_or(|t| main.tv <= t);
    let p_ok = args
        .min_p
        .is_none_or(|t| main.chi_square_p.is_some_and(|p| p >= t));
    let pass = tv_ok && p_ok;
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: echo.as_str().into(),
        target,
        rng: Rng {
            algorithm: RNG_ALGORITHM,
            seed: args.seed,
            stream: STREAM,
        },
        samples: hist.total(),
        analytic_tail_bound: table.tail_bound(),
        conditional,
        histogram,
        tv: main.tv,
        chi_square_p: main.chi_square_p,
        binomial_reference,
        pass,
    };
    eprintln!(
        "photon-gbd: {target}: TV {:.3e}, chi-square p {:?}",
        report.tv, report.chi_square_p
    );
    emit(&render_json(&report)?, out)?;
    Ok(Status::from_pass(pass))
}
