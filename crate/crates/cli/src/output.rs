//! Report writers: CSV with `#` metadata comments, and JSON.

use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

/// Version of every CSV and JSON layout emitted by this binary.
pub const SCHEMA_VERSION: u32 = 1;

/// `x` rounded to 12 significant digits, printed without trailing zeros.
pub fn csv_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..15).contains(&exp) {
        let rounded: f64 = sci.parse().expect("round trip");
        rounded.to_string()
    } else {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

/// Canonical, re-runnable command line.
#[derive(Debug, Clone)]
pub struct Echo(String);

impl Echo {
    pub fn new(subcommand: &str) -> Self {
        Echo(format!("photon-gbd {subcommand}"))
    }

    pub fn word(mut self, word: &str) -> Self {
        self.0.push(' ');
        self.0.push_str(word);
        self
    }

    pub fn flag(self, name: &str, value: impl Display) -> Self {
        self.word(&format!("--{name} {value}"))
    }

    pub fn opt(self, name: &str, value: Option<impl Display>) -> Self {
        match value {
            Some(v) => self.flag(name, v),
            None => self,
        }
    }

    pub fn switch(self, name: &str, on: bool) -> Self {
        if on {
            self.word(&format!("--{name}"))
        } else {
            self
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// One header row and its data rows.
pub struct CsvSection {
    pub name: Option<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvSection {
    pub fn new(name: Option<&str>, header: &[&str]) -> Self {
        Self {
            name: name.map(String::from),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// A CSV document: metadata comments followed by one or more sections.
pub struct CsvDoc {
    meta: Vec<(String, String)>,
    sections: Vec<CsvSection>,
}

impl CsvDoc {
    pub fn new(echo: &Echo) -> Self {
        Self {
            meta: vec![
                ("schema_version".into(), SCHEMA_VERSION.to_string()),
                ("command".into(), echo.as_str().into()),
            ],
            sections: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Display) {
        self.meta.push((key.into(), value.to_string()));
    }

    pub fn section(&mut self, section: CsvSection) {
        self.sections.push(section);
    }

    pub fn render(&self) -> Result<Vec<u8>, CliError> {
        let mut out = Vec::new();
        for (k, v) in &self.meta {
            writeln!(out, "# {k}: {v}")?;
        }
        for section in &self.sections {
            if let Some(name) = &section.name {
                writeln!(out, "# section: {name}")?;
            }
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&section.header)?;
            for row in &section.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Ok(out)
    }
}

pub fn render_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Writes to `path`, or stdout when absent.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}
