//! File formats: JSON with 17 significant digits per float, CSV mirrors, and
//! atomic writes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use quatpw::sampling::SampleSet;
use quatpw::{LineSamples, Quaternion, Spectrum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::ser::Formatter;
use tempfile::NamedTempFile;

use crate::error::CliError;

/// Compact JSON with every float in `d.dddddddddddddddde±x` form.
struct SignificantDigits;

impl Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SignificantDigits);
    value.serialize(&mut ser).map_err(quatpw::Error::from)?;
    out.push(b'\n');
    Ok(out)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_atomic(path, &to_json(value)?)
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn quaternion_cells(q: Quaternion) -> [String; 4] {
    q.to_array().map(num)
}

fn csv_bytes(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))
}

fn node_rows<'a>(nodes: Vec<f64>, values: &'a [Quaternion]) -> impl Iterator<Item = Vec<String>> + 'a {
    nodes.into_iter().zip(values).map(|(x, v)| {
        let mut row = vec![num(x)];
        row.extend(quaternion_cells(*v));
        row
    })
}

pub fn line_samples_csv(s: &LineSamples) -> Result<Vec<u8>, CliError> {
    csv_bytes(&["node", "w", "x", "y", "z"], node_rows(s.grid.nodes(), &s.values))
}

pub fn spectrum_csv(s: &Spectrum) -> Result<Vec<u8>, CliError> {
    csv_bytes(&["frequency", "w", "x", "y", "z"], node_rows(s.grid.nodes(), &s.values))
}

pub fn sample_set_csv(s: &SampleSet) -> Result<Vec<u8>, CliError> {
    let k = s.k as i64;
    let rows = (-k..=k).map(|m| {
        let mut row = vec![m.to_string(), num(s.node(m))];
        row.extend(quaternion_cells(s.sample(m)));
        row
    });
    csv_bytes(&["k", "node", "w", "x", "y", "z"], rows)
}

pub fn evaluations_csv(points: &[Quaternion], values: &[Quaternion]) -> Result<Vec<u8>, CliError> {
    let rows = points.iter().zip(values).map(|(p, v)| {
        let mut row = quaternion_cells(*p).to_vec();
        row.extend(quaternion_cells(*v));
        row
    });
    csv_bytes(&["qw", "qx", "qy", "qz", "w", "x", "y", "z"], rows)
}
