use std::path::Path;

use clap::{Args, ValueEnum};
use photon_gbd::figures::{fig2, fig3, fig4, log_grid, FigureTable, FIG4_VOLUMES};

use crate::output::{csv_float, emit, CsvDoc, CsvSection, Echo};
use crate::{CliError, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Two photons, equal halves: W(2,0), W(1,1), W(0,2) against S.
    Fig2,
    /// Three photons with alpha = 0.55 against S.
    Fig3,
    /// n photons among two equal parts, one column per volume.
    Fig4,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(value_enum)]
    pub which: Figure,
    /// Smallest S of the log grid (fig2, fig3).
    #[arg(long, default_value_t = 0.01)]
    pub s_min: f64,
    /// Largest S of the log grid (fig2, fig3).
    #[arg(long, default_value_t = 100.0)]
    pub s_max: f64,
    /// Grid points (fig2, fig3).
    #[arg(long, default_value_t = 81)]
    pub points: usize,
    /// Photon number (fig4).
    #[arg(long, default_value_t = 50)]
    pub n: u64,
    /// Volumes, comma separated (fig4).
    #[arg(long, value_delimiter = ',', default_values_t = FIG4_VOLUMES.to_vec())]
    pub volumes: Vec<f64>,
}

pub fn run(args: &FiguresArgs, out: Option<&Path>) -> Result<Status, CliError> {
    let (table, echo, alpha) = match args.which {
        Figure::Fig2 | Figure::Fig3 => {
            let grid = log_grid(args.s_min, args.s_max, args.points)?;
            let (name, table, alpha) = if args.which == Figure::Fig2 {
                ("fig2", fig2(&grid)?, 0.5)
            } else {
                ("fig3", fig3(&grid)?, 0.55)
            };
            let echo = Echo::new("figures")
                .word(name)
                .flag("s-min", args.s_min)
                .flag("s-max", args.s_max)
                .flag("points", args.points);
            (table, echo, alpha)
        }
        Figure::Fig4 => {
            let list: Vec<String> = args.volumes.iter().map(|v| v.to_string()).collect();
            let echo = Echo::new("figures")
                .word("fig4")
                .flag("n", args.n)
                .flag("volumes", list.join(","));
            (fig4(args.n, &args.volumes)?, echo, 0.5)
        }
    };
    let mut doc = CsvDoc::new(&echo);
    doc.meta("alpha", alpha);
    doc.section(to_section(&table, args.which == Figure::Fig4));
    emit(&doc.render()?, out)?;
    Ok(Status::Passed)
}

/// `first_is_index`: the first column holds integers.
fn to_section(table: &FigureTable, first_is_index: bool) -> CsvSection {
    let header: Vec<&str> = table.columns.iter().map(String::as_str).collect();
    let mut section = CsvSection::new(None, &header);
    for row in &table.rows {
        let cells = row
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                if i == 0 && first_is_index {
                    (x as u64).to_string()
                } else {
                    csv_float(x)
                }
            })
            .collect();
        section.push(cells);
    }
    section
}
