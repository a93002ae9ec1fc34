//! CSV emission and atomic file writes.
//!
//! Floats are written with 17 significant digits in scientific notation, so
//! every value round-trips exactly and repeated runs are byte-identical.

use std::io::Write;
use std::path::Path;

use langcomp_core::dynamics::Trajectory;

use crate::error::{CliError, Result};

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// In-memory CSV document with a single header row.
#[derive(Debug)]
pub struct Csv {
    writer: csv::Writer<Vec<u8>>,
    width: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        writer.write_record(header).expect("write to memory");
        Self { writer, width: header.len() }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let fields: Vec<S> = fields.into_iter().collect();
        debug_assert_eq!(fields.len(), self.width);
        self.writer.write_record(fields).expect("write to memory");
    }

    pub fn floats(&mut self, values: &[f64]) {
        self.row(values.iter().map(|v| fmt_f64(*v)));
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.writer.into_inner().expect("flush to memory")
    }
}

/// `t,m1,m2,b`, one row per accepted step.
pub fn trajectory_csv<P>(traj: &Trajectory<P>) -> Vec<u8> {
    let mut csv = Csv::new(&["t", "m1", "m2", "b"]);
    for (t, s) in traj.iter() {
        csv.floats(&[t, s.m1(), s.m2(), s.b()]);
    }
    csv.into_bytes()
}

/// Write through a temporary file in the target directory and rename it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Writes to `path` atomically, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::io("<stdout>", e))
        }
    }
}

pub fn json_bytes<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("serialisable report");
    v.push(b'\n');
    v
}
