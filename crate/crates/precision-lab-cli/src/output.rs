//! CSV and plot-script emission. Every number is written with Rust's
//! shortest round-trip formatting, so a parser reading the CSV recovers
//! bit-identical floats; newlines are LF; the header is always present.

use crate::{Failure, EX_IOERR};
use std::io::Write;
use std::path::Path;

/// Where a command writes its primary output.
pub enum Sink {
    Stdout,
    File(std::fs::File, String),
}

impl Sink {
    /// `-` (or nothing) selects stdout.
    pub fn open(out: &str) -> Result<Sink, Failure> {
        if out == "-" {
            return Ok(Sink::Stdout);
        }
        let file = std::fs::File::create(out).map_err(|e| Failure {
            code: EX_IOERR,
            message: format!("cannot create {out}: {e}"),
        })?;
        Ok(Sink::File(file, out.to_string()))
    }

    pub fn path(&self) -> Option<&str> {
        match self {
            Sink::Stdout => None,
            Sink::File(_, p) => Some(p),
        }
    }

    pub fn write_all_text(&mut self, text: &str) -> Result<(), Failure> {
        let res = match self {
            Sink::Stdout => std::io::stdout().lock().write_all(text.as_bytes()),
            Sink::File(f, _) => f.write_all(text.as_bytes()),
        };
        res.map_err(Failure::io)
    }
}

/// Shortest round-trip decimal form of a float. Scientific notation for
/// extreme magnitudes keeps the columns readable; both forms parse back to
/// the identical bits.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// One CSV line from already-formatted fields.
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

/// Companion gnuplot script plotting `ycol` against column 1 of the CSV.
pub fn gnuplot_script(csv_path: &str, ycol: usize, ylabel: &str, logscale: bool) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set key off\n");
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    if logscale {
        s.push_str("set logscale y\n");
    }
    s.push_str(&format!("plot '{csv_path}' using 1:{ycol} with lines\n"));
    s
}

pub fn write_gnuplot_script(
    script_path: &Path,
    csv_path: Option<&str>,
    ycol: usize,
    ylabel: &str,
    logscale: bool,
) -> Result<(), Failure> {
    let Some(csv_path) = csv_path else {
        return Err(Failure::usage(
            "--gnuplot-script requires --out to name a file (not stdout)",
        ));
    };
    std::fs::write(
        script_path,
        gnuplot_script(csv_path, ycol, ylabel, logscale),
    )
    .map_err(Failure::io)
}
