//! Identity checks over fixed default grids, reported as JSON.
//!
//! The hidden `--inject-fault` flag offsets every phase-space volume (or
//! sampling time) the checks hand to the library by [`FAULT_SHIFT`]. The
//! identities are not invariant under that offset, so a run with the flag
//! must fail; it guards against a gate that cannot fail.

use std::path::Path;

use clap::{Args, ValueEnum};
use photon_gbd::dist::{
    polya_table, verify_convolution, verify_vandermonde, PhaseVolume, PhotonStatistics, StatModel,
};
use photon_gbd::scenarios::{
    cascade, joint_output_distribution, suggested_n_max, BeamState, DeviceKind, JointTable,
    SplitDevice,
};
use photon_gbd::series::{glauber_gf, rising_factorial_gf, verify_multiplicativity_with};
use photon_gbd::GlauberParams;
use serde::Serialize;

use crate::output::{emit, render_json, Echo, SCHEMA_VERSION};
use crate::{CliError, Status};

const FAULT_SHIFT: f64 = 1e-6;

const CONVOLUTION_VOLUMES: [f64; 4] = [0.5, 1.0, 2.7, 10.0];
const CONVOLUTION_W: [f64; 3] = [0.3, 1.0, 3.0];
const CONVOLUTION_N_MAX: u64 = 200;
const CONVOLUTION_TOL: f64 = 1e-10;

const VANDERMONDE_PARAMS: [f64; 7] = [0.1, 0.5, 1.0, 2.7, 10.0, 31.6, 100.0];
const VANDERMONDE_N_MAX: u64 = 300;
const VANDERMONDE_TOL: f64 = 1e-11;
const RISING_GF_PARAMS: [f64; 6] = [0.5, 1.0, 2.5, 7.0, 10.0, 100.0];
const RISING_GF_ORDER: usize = 100;

const GLAUBER_GRID: [f64; 3] = [0.1, 1.0, 10.0];
const GLAUBER_ORDER: usize = 60;
const GLAUBER_TOL: f64 = 1e-10;
const VACUUM_TOL: f64 = 1e-12;
/// `(W, tau)` pairs for the large-damping limit at `gamma = 1e6`.
const POISSON_LIMIT_CASES: [(f64, f64); 2] = [(1.0, 1.0), (0.5, 2.0)];
const POISSON_LIMIT_GAMMA: f64 = 1e6;
const POISSON_LIMIT_TOL: f64 = 1e-6;

const MARGINAL_ALPHA: [f64; 3] = [0.25, 0.5, 0.8];
const MARGINAL_S: [f64; 3] = [0.5, 2.0, 10.0];
const MARGINAL_W: [f64; 2] = [0.3, 1.0];
const MARGINAL_TOL: f64 = 1e-10;
const MARGINAL_TAIL: f64 = 1e-12;
/// `(first, second, product)` transmittances.
const CASCADES: [(f64, f64, f64); 3] = [(0.5, 0.5, 0.25), (0.8, 0.6, 0.48), (0.9, 0.3, 0.27)];
const CASCADE_TOL: f64 = 1e-12;
const POST_SELECT_N: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Convolution,
    Vandermonde,
    Gf,
    Marginal,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Convolution => "convolution",
            Suite::Vandermonde => "vandermonde",
            Suite::Gf => "gf",
            Suite::Marginal => "marginal",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Serialize)]
struct Check {
    suite: &'static str,
    name: &'static str,
    tolerance: f64,
    max_residual: f64,
    worst_case: String,
    cases: usize,
    pass: bool,
}

struct Tracker {
    check: Check,
}

impl Tracker {
    fn new(suite: &'static str, name: &'static str, tolerance: f64) -> Self {
        Tracker {
            check: Check {
                suite,
                name,
                tolerance,
                max_residual: 0.0,
                worst_case: String::new(),
                cases: 0,
                pass: false,
            },
        }
    }

    fn record(&mut self, residual: f64, case: impl FnOnce() -> String) {
        let residual = if residual.is_nan() {
            f64::INFINITY
        } else {
            residual
        };
        self.check.cases += 1;
        if self.check.cases == 1 || residual > self.check.max_residual {
            self.check.max_residual = residual;
            self.check.worst_case = case();
        }
    }

    fn finish(mut self) -> Check {
        self.check.pass = self.check.max_residual <= self.check.tolerance;
        self.check
    }
}

#[derive(Debug, Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    suite: &'static str,
    fault_injected: bool,
    pass: bool,
    checks: Vec<Check>,
}

/// A statistics family evaluated at volumes offset by `delta`.
struct Shifted<'a> {
    inner: &'a StatModel,
    delta: f64,
}

impl PhotonStatistics for Shifted<'_> {
    fn ln_pmf_prefix(&self, volume: PhaseVolume, n_max: u64) -> Vec<f64> {
        let v = PhaseVolume::new(volume.cells() + self.delta).expect("positive volume");
        self.inner.ln_pmf_prefix(v, n_max)
    }
}

fn vol(x: f64) -> Result<PhaseVolume, CliError> {
    Ok(PhaseVolume::new(x)?)
}

fn convolution(delta: f64) -> Result<Vec<Check>, CliError> {
    let mut poisson = Tracker::new("convolution", "poisson", CONVOLUTION_TOL);
    let mut be = Tracker::new("convolution", "bose_einstein", CONVOLUTION_TOL);
    for &w in &CONVOLUTION_W {
        for (tracker, model) in [
            (&mut poisson, StatModel::poisson(w)?),
            (&mut be, StatModel::bose_einstein(w)?),
        ] {
            let shifted = Shifted {
                inner: &model,
                delta,
            };
            for &a in &CONVOLUTION_VOLUMES {
                for &b in &CONVOLUTION_VOLUMES {
                    let r = verify_convolution(&shifted, vol(a)?, vol(b)?, CONVOLUTION_N_MAX);
                    tracker.record(r, || format!("A={a} B={b} w={w} n<={CONVOLUTION_N_MAX}"));
                }
            }
        }
    }
    Ok(vec![poisson.finish(), be.finish()])
}

fn vandermonde(delta: f64) -> Result<Vec<Check>, CliError> {
    let mut identity = Tracker::new("vandermonde", "rising_factorial_identity", VANDERMONDE_TOL);
    for &a in &VANDERMONDE_PARAMS {
        for &b in &VANDERMONDE_PARAMS {
            for n in 0..=VANDERMONDE_N_MAX {
                identity.record(verify_vandermonde(a, b, n), || format!("A={a} B={b} n={n}"));
            }
        }
    }
    let mut gf = Tracker::new(
        "vandermonde",
        "rising_factorial_gf_multiplicativity",
        VANDERMONDE_TOL,
    );
    for &a in &RISING_GF_PARAMS {
        for &b in &RISING_GF_PARAMS {
            let r = verify_multiplicativity_with(
                |x| rising_factorial_gf(x + delta, RISING_GF_ORDER).expect("positive parameter"),
                a,
                b,
            );
            gf.record(r, || format!("A={a} B={b} N={RISING_GF_ORDER}"));
        }
    }
    Ok(vec![identity.finish(), gf.finish()])
}

fn gf(delta: f64) -> Result<Vec<Check>, CliError> {
    let mut mult = Tracker::new("gf", "glauber_multiplicativity", GLAUBER_TOL);
    let mut vacuum = Tracker::new("gf", "glauber_vacuum_closed_form", VACUUM_TOL);
    for &gamma in &GLAUBER_GRID {
        for &rate in &GLAUBER_GRID {
            for &tau in &GLAUBER_GRID {
                let params = GlauberParams::new(gamma, rate, tau)?;
                let series = |t: f64| {
                    glauber_gf(
                        &params.with_tau(t + delta).expect("positive tau"),
                        GLAUBER_ORDER,
                    )
                };
                let r = verify_multiplicativity_with(series, 0.4 * tau, 0.6 * tau);
                mult.record(r, || {
                    format!("gamma={gamma} W={rate} tau={tau} split 0.4/0.6 N={GLAUBER_ORDER}")
                });

                let closed = (-((gamma * gamma + 2.0 * gamma * rate).sqrt() - gamma) * tau).exp();
                let p0 = series(tau).coeff(0);
                vacuum.record((p0 - closed).abs() / closed, || {
                    format!("gamma={gamma} W={rate} tau={tau}")
                });
            }
        }
    }
    let mut limit = Tracker::new("gf", "glauber_poisson_limit", POISSON_LIMIT_TOL);
    for &(rate, tau) in &POISSON_LIMIT_CASES {
        let params = GlauberParams::new(POISSON_LIMIT_GAMMA, rate, tau + delta)?;
        let series = glauber_gf(&params, GLAUBER_ORDER);
        let poisson = StatModel::poisson(rate)?;
        let worst = (0..=GLAUBER_ORDER)
            .map(|k| {
                (series.coeff(k) - poisson.pmf(k as u64, PhaseVolume::new(tau).unwrap())).abs()
            })
            .fold(0.0, f64::max);
        limit.record(worst, || {
            format!("gamma={POISSON_LIMIT_GAMMA} W={rate} tau={tau}")
        });
    }
    Ok(vec![mult.finish(), vacuum.finish(), limit.finish()])
}

fn max_table_diff(x: &JointTable, y: &JointTable) -> f64 {
    if x.n_max() != y.n_max() {
        return f64::INFINITY;
    }
    x.entries()
        .zip(y.entries())
        .map(|((_, _, p), (_, _, q))| (p - q).abs())
        .fold(0.0, f64::max)
}

fn marginal(delta: f64) -> Result<Vec<Check>, CliError> {
    let mut marg = Tracker::new("marginal", "transmitted_marginal", MARGINAL_TOL);
    let mut kinds = Tracker::new("marginal", "device_equivalence", 0.0);
    let mut post = Tracker::new("marginal", "thermal_post_selection", MARGINAL_TOL);
    for &w in &MARGINAL_W {
        for model in [StatModel::poisson(w)?, StatModel::bose_einstein(w)?] {
            for &s in &MARGINAL_S {
                let beam = BeamState::new(model, vol(s)?);
                for &alpha in &MARGINAL_ALPHA {
                    let case = || format!("{} w={w} S={s} alpha={alpha}", model.name());
                    let device = SplitDevice::new(DeviceKind::Beamsplitter, alpha)?;
                    let n_max = suggested_n_max(&beam, device, MARGINAL_TAIL)?;
                    let joint = joint_output_distribution(&beam, device, n_max)?;
                    let transmitted = joint.transmitted_marginal()?;
                    let reference = vol(alpha * s + delta)?;
                    let worst = transmitted
                        .probs()
                        .iter()
                        .enumerate()
                        .map(|(k, &p)| (p - model.pmf(k as u64, reference)).abs())
                        .fold(0.0, f64::max);
                    marg.record(worst, case);

                    for kind in DeviceKind::ALL {
                        let other = joint_output_distribution(
                            &beam,
                            SplitDevice::new(kind, alpha)?,
                            n_max,
                        )?;
                        kinds.record(max_table_diff(&joint, &other), || {
                            format!("{kind} {}", case())
                        });
                    }

                    if let StatModel::BoseEinstein { .. } = model {
                        for n in 0..=POST_SELECT_N.min(n_max) {
                            let got = joint.post_selected(n)?;
                            let want = polya_table(n, device.split(), vol(s + delta)?);
                            let worst = (0..=n)
                                .map(|k| (got.get(k) - want.get(k)).abs())
                                .fold(0.0, f64::max);
                            post.record(worst, || format!("n={n} {}", case()));
                        }
                    }
                }
            }
        }
    }

    let mut chain = Tracker::new("marginal", "cascade_composition", CASCADE_TOL);
    let beam = BeamState::new(StatModel::bose_einstein(1.0)?, vol(2.0)?);
    for &(t1, t2, product) in &CASCADES {
        let first = SplitDevice::new(DeviceKind::Beamsplitter, t1)?;
        let second = SplitDevice::new(DeviceKind::NeutralFilter, t2)?;
        let combined = cascade(first, second)?;
        let single = SplitDevice::new(DeviceKind::Beamsplitter, product + delta)?;
        let n_max = suggested_n_max(&beam, single, MARGINAL_TAIL)?;
        let x = joint_output_distribution(&beam, combined, n_max)?;
        let y = joint_output_distribution(&beam, single, n_max)?;
        chain.record(max_table_diff(&x, &y), || {
            format!("{t1} x {t2} vs {product}")
        });
    }
    Ok(vec![
        marg.finish(),
        kinds.finish(),
        post.finish(),
        chain.finish(),
    ])
}

pub fn run(args: &VerifyArgs, out: Option<&Path>) -> Result<Status, CliError> {
    let delta = if args.inject_fault { FAULT_SHIFT } else { 0.0 };
    let mut checks = Vec::new();
    let all = args.suite == Suite::All;
    if all || args.suite == Suite::Convolution {
        checks.extend(convolution(delta)?);
    }
    if all || args.suite == Suite::Vandermonde {
        checks.extend(vandermonde(delta)?);
    }
    if all || args.suite == Suite::Gf {
        checks.extend(gf(delta)?);
    }
    if all || args.suite == Suite::Marginal {
        checks.extend(marginal(delta)?);
    }
    for c in &checks {
        eprintln!(
            "{} {}/{}: max residual {:.3e} (tol {:.0e})",
            if c.pass { "ok  " } else { "FAIL" },
            c.suite,
            c.name,
            c.max_residual,
            c.tolerance
        );
    }
    let pass = checks.iter().all(|c| c.pass);
    let echo = Echo::new("verify")
        .flag("suite", args.suite.name())
        .switch("inject-fault", args.inject_fault);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: echo.as_str().into(),
        suite: args.suite.name(),
        fault_injected: args.inject_fault,
        pass,
        checks,
    };
    emit(&render_json(&report)?, out)?;
    Ok(Status::from_pass(pass))
}
