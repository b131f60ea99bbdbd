use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use multdep_core::error::Error;
use multdep_core::real::Real;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_UNDECIDED: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Invalid(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        // A closed stdout (e.g. piped into `head`) is not a failure.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Core(Error::Budget { .. }) => EXIT_BUDGET,
            CliError::Core(Error::Undecided { .. }) => EXIT_UNDECIDED,
            CliError::Core(_) | CliError::Invalid(_) => EXIT_INVALID,
            CliError::Io(_) => EXIT_IO,
        })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Certified interval as midpoint and radius.
#[derive(Serialize, Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub mid: f64,
    pub rad: f64,
}

impl From<&Real> for Interval {
    fn from(r: &Real) -> Self {
        Interval { mid: r.mid_f64(), rad: r.rad_f64() }
    }
}

pub fn interval(r: &Real) -> Value {
    json!(Interval::from(r))
}

#[derive(Debug, Default)]
pub struct Report {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub records: Vec<Value>,
    /// Two-column `(x, ratio)` data.
    pub plot: Vec<(String, f64)>,
    /// Print the records as JSON instead of the CSV table when no `--out` is given.
    pub json_primary: bool,
    /// Set when some count could not be certified.
    pub undecided: bool,
}

impl Report {
    pub fn table(header: &[&str]) -> Self {
        Report { header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    pub fn plot_data(&self) -> String {
        let mut s = String::new();
        for (x, y) in &self.plot {
            let _ = writeln!(s, "{x} {y}");
        }
        s
    }

    pub fn write(&self, out: Option<&Path>, config: Value, wall_time: f64) -> CliResult<()> {
        let summary = json!({
            "config": config,
            "records": self.records,
            "wall_time": wall_time,
            "version": env!("CARGO_PKG_VERSION"),
        });
        match out {
            None => {
                let mut stdout = std::io::stdout().lock();
                if self.json_primary {
                    writeln!(stdout, "{}", serde_json::to_string_pretty(&self.records_value()).expect("json"))?;
                } else {
                    stdout.write_all(self.csv().as_bytes())?;
                }
            }
            Some(path) => {
                std::fs::write(path, self.csv())?;
                std::fs::write(sibling(path, "json"), serde_json::to_string_pretty(&summary).expect("json") + "\n")?;
                if !self.plot.is_empty() {
                    std::fs::write(sibling(path, "plot.dat"), self.plot_data())?;
                }
            }
        }
        Ok(())
    }

    fn records_value(&self) -> Value {
        match self.records.as_slice() {
            [one] => one.clone(),
            many => Value::Array(many.to_vec()),
        }
    }
}

fn quote(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// `counts.csv` -> `counts.json`, `counts.plot.dat`.
pub fn sibling(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_rad(x: f64) -> String {
    format!("{x:e}")
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}
