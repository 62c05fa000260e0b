//! Numeric CSV columns looked up by header name.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Reads the named columns from a headed CSV. `label` names the source in
/// error messages. Extra columns are ignored; every requested value must be a
/// finite number.
pub fn read_columns<R: Read>(reader: R, label: &str, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::Reader::from_reader(reader);
    let headers = reader.headers()?.clone();
    let idx = names
        .iter()
        .map(|name| {
            headers
                .iter()
                .position(|h| h.trim() == *name)
                .ok_or_else(|| Error::parse(label, format!("missing column `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![Vec::new(); names.len()];
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        for ((col, &i), name) in out.iter_mut().zip(&idx).zip(names) {
            let raw = record.get(i).unwrap_or("").trim();
            let v: f64 = raw.parse().map_err(|_| {
                Error::parse(
                    format!("{label} row {}", row + 2),
                    format!("`{name}` = `{raw}` is not a number"),
                )
            })?;
            if !v.is_finite() {
                return Err(Error::parse(
                    format!("{label} row {}", row + 2),
                    format!("`{name}` is not finite"),
                ));
            }
            col.push(v);
        }
    }
    Ok(out)
}

pub fn read_columns_from_path(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_columns(file, &path.display().to_string(), names)
}
