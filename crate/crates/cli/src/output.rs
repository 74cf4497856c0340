//! File writers. Numbers use Rust's shortest round-trip `f64` formatting, so
//! identical inputs give byte-identical files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// Collects files for one command under a directory.
pub struct Writer {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Writer {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
        Ok(Self { dir: dir.to_path_buf(), written: Vec::new() })
    }

    pub fn text(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
        self.written.push(path);
        Ok(())
    }

    pub fn json(&mut self, name: &str, value: &impl Serialize) -> Result<(), CliError> {
        let mut body = serde_json::to_string_pretty(value).expect("metadata serializes to JSON");
        body.push('\n');
        self.text(name, &body)
    }

    pub fn files(&self) -> &[PathBuf] {
        &self.written
    }
}

/// Comma-separated table with a header row.
pub struct Csv {
    body: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { body: header.join(",") + "\n" }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.body.push_str(&cells.join(","));
        self.body.push('\n');
    }

    pub fn finish(self) -> String {
        self.body
    }
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

/// Frequency in the 10² cm⁻¹ display unit.
pub fn hecto(x: f64) -> String {
    format!("{}", x / 100.0)
}

/// Gnuplot heat map of column `z` against display-unit columns.
pub fn heatmap_script(csv: &str, png: &str, title: &str, xlabel: &str, ylabel: &str, cols: (usize, usize, usize)) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 900,800 enhanced");
    let _ = writeln!(s, "set output '{png}'");
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set title '{title}'");
    let _ = writeln!(s, "set xlabel '{xlabel} (10^2 cm^{{-1}})'");
    let _ = writeln!(s, "set ylabel '{ylabel} (10^2 cm^{{-1}})'");
    let _ = writeln!(s, "set palette rgbformulae 33,13,10");
    let _ = writeln!(s, "set view map");
    let _ = writeln!(
        s,
        "plot '{csv}' every ::1 using {}:{}:{} with image notitle",
        cols.0, cols.1, cols.2
    );
    s
}
