use std::io::Write;
use std::path::{Path, PathBuf};

/// Round-trip safe float formatting (17 significant digits).
pub fn f(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, path: Option<&Path>) -> std::io::Result<()> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(std::fs::File::create(p)?),
            None => Box::new(std::io::stdout().lock()),
        };
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()
    }
}

/// Two-column whitespace-separated data for external plotting.
#[derive(Debug, Default)]
pub struct PlotData {
    pub points: Vec<(f64, f64)>,
}

impl PlotData {
    pub fn write(&self, path: &PathBuf) -> std::io::Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for (x, y) in &self.points {
            writeln!(out, "{} {}", f(*x), f(*y))?;
        }
        out.flush()
    }
}
