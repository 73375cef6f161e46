//! Output tables of a splitting device.
//!
//! The device kind does not enter the statistics, so the data and the echoed
//! command use one canonical kind and are byte-identical for all four. The
//! requested kind and what its complementary count means go to stderr.

use std::path::Path;

use clap::Args;
use photon_gbd::dist::PhaseVolume;
use photon_gbd::scenarios::{
    cascade, joint_output_distribution, suggested_n_max, BeamState, DeviceKind, SplitDevice,
};

use crate::model_args::ModelFlags;
use crate::output::{csv_float, emit, CsvDoc, CsvSection, Echo};
use crate::{CliError, Status};

const CANONICAL_KIND: DeviceKind = DeviceKind::Beamsplitter;

fn parse_device(s: &str) -> Result<DeviceKind, String> {
    s.parse().map_err(|e: photon_gbd::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// diaphragm, beamsplitter, detector or neutral-filter.
    #[arg(long, value_parser = parse_device)]
    pub device: DeviceKind,
    /// Transmittance of the device.
    #[arg(long)]
    pub alpha: f64,
    /// Further devices in series, by transmittance.
    #[arg(long = "then")]
    pub then: Vec<f64>,
    #[command(flatten)]
    pub model: ModelFlags,
    /// Incident volume in cells (sampling time for Glauber).
    #[arg(long = "S")]
    pub s: f64,
    /// Largest count per output; by default both output tables leave less
    /// than 1e-12 out.
    #[arg(long)]
    pub n_max: Option<u64>,
}

const AUTO_TAIL: f64 = 1e-12;

pub fn run(args: &ScenarioArgs, out: Option<&Path>) -> Result<Status, CliError> {
    let model = args.model.resolve()?;
    let volume = PhaseVolume::new(args.s)?;
    let beam = BeamState::new(model, volume);
    let mut device = SplitDevice::new(args.device, args.alpha)?;
    for &t in &args.then {
        device = cascade(device, SplitDevice::new(args.device, t)?)?;
    }
    eprintln!(
        "photon-gbd: device {} (effective transmittance {}): {}",
        args.device,
        device.transmittance(),
        args.device.loss_note()
    );
    let alpha = device.transmittance();
    let device = SplitDevice::new(CANONICAL_KIND, alpha)?;
    let n_max = match args.n_max {
        Some(n) => n,
        None => suggested_n_max(&beam, device, AUTO_TAIL)?,
    };
    let joint = joint_output_distribution(&beam, device, n_max)?;
    let transmitted = joint.transmitted_marginal()?;
    let complementary = joint.complementary_marginal()?;
    let reference_volume = beam.transmitted(device)?.volume;

    let echo = Echo::new("scenario")
        .flag("device", CANONICAL_KIND)
        .flag("alpha", alpha);
    let echo = ModelFlags::echo(&model, echo)
        .flag("S", args.s)
        .flag("n-max", n_max);
    let mut doc = CsvDoc::new(&echo);
    doc.meta("model", model.name());
    doc.meta("transmitted_volume", csv_float(reference_volume.cells()));

    let mut joint_rows = CsvSection::new(Some("joint"), &["k", "m", "p"]);
    for (k, m, p) in joint.entries() {
        joint_rows.push(vec![k.to_string(), m.to_string(), csv_float(p)]);
    }
    doc.section(joint_rows);

    let mut marginal = CsvSection::new(
        Some("marginal"),
        &["k", "transmitted", "complementary", "reference"],
    );
    for k in 0..=n_max {
        marginal.push(vec![
            k.to_string(),
            csv_float(transmitted.get(k as usize)),
            csv_float(complementary.get(k as usize)),
            csv_float(model.pmf(k, reference_volume)),
        ]);
    }
    doc.section(marginal);
    emit(&doc.render()?, out)?;
    Ok(Status::Passed)
}
