use std::path::Path;

use clap::Args;
use photon_gbd::dist::{PhaseVolume, StatModel, TableExtent};

use crate::model_args::{require, ModelFlags};
use crate::output::{csv_float, emit, CsvDoc, CsvSection, Echo};
use crate::{CliError, Status};

#[derive(Debug, Args)]
pub struct PmfArgs {
    #[command(flatten)]
    pub model: ModelFlags,
    /// Phase-space volume in cells (Poisson and Bose-Einstein).
    #[arg(long)]
    pub volume: Option<f64>,
    /// Sampling time (Glauber).
    #[arg(long)]
    pub tau: Option<f64>,
    /// Last k to tabulate; by default the table stops once the certified tail
    /// is below 1e-12.
    #[arg(long)]
    pub kmax: Option<u64>,
}

pub fn run(args: &PmfArgs, out: Option<&Path>) -> Result<Status, CliError> {
    let model = args.model.resolve()?;
    let (volume_flag, volume) = match model {
        StatModel::Glauber { .. } => ("tau", require(args.tau, "tau", "--model glauber")?),
        _ => ("volume", require(args.volume, "volume", "this model")?),
    };
    let volume_cells = PhaseVolume::new(volume)?;
    let extent = match args.kmax {
        Some(k) => TableExtent::UpTo(k),
        None => TableExtent::default(),
    };
    let table = model.table(volume_cells, extent)?;

    let echo = ModelFlags::echo(&model, Echo::new("pmf"))
        .flag(volume_flag, volume)
        .opt("kmax", args.kmax);
    let mut doc = CsvDoc::new(&echo);
    doc.meta("model", model.name());
    doc.meta("mean", csv_float(model.mean(volume_cells)));
    doc.meta("tail_bound", csv_float(table.tail_bound()));
    let mut section = CsvSection::new(None, &["k", "p_k"]);
    for (k, &p) in table.probs().iter().enumerate() {
        section.push(vec![k.to_string(), csv_float(p)]);
    }
    doc.section(section);
    emit(&doc.render()?, out)?;
    Ok(Status::Passed)
}
