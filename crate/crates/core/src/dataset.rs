//! Measurement series and their delimited-text form.
//!
//! Files are UTF-8 with a header row; the schema names the environment and
//! action columns and the (single-byte) delimiter. Values print in shortest
//! round-trip form, so a write/load cycle reproduces samples bit for bit.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// One measurement: the environment value and the action observed under it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub env: T,
    pub action: T,
}

/// A labelled series of (environment, action) measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T> {
    pub name: String,
    pub env_label: String,
    pub env_unit: String,
    pub action_label: String,
    pub action_unit: String,
    pub samples: Vec<Sample<T>>,
}

/// Which columns of a delimited file hold the series.
#[derive(Debug, Clone)]
pub struct TableSchema {
    pub env_column: String,
    pub action_column: String,
    pub delimiter: u8,
}

impl TableSchema {
    pub fn new(env_column: impl Into<String>, action_column: impl Into<String>) -> Self {
        Self {
            env_column: env_column.into(),
            action_column: action_column.into(),
            delimiter: b',',
        }
    }

    pub fn with_delimiter(mut self, delimiter: u8) -> Self {
        self.delimiter = delimiter;
        self
    }
}

/// Reads a dataset from a delimited file. The dataset takes its name from the
/// file stem and its labels from the schema's column names.
pub fn load_dataset<T: Real>(path: impl AsRef<Path>, schema: &TableSchema) -> Result<Dataset<T>> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    read_dataset(File::open(path)?, schema, &name)
}

/// Reads a dataset from any source. Rows keep file order; a cell that does
/// not parse as a finite number fails with its line number; a file with a
/// header but no data rows fails as empty.
pub fn read_dataset<T: Real, R: Read>(
    reader: R,
    schema: &TableSchema,
    name: &str,
) -> Result<Dataset<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(schema.delimiter)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let env_idx = column_index(&headers, &schema.env_column)?;
    let action_idx = column_index(&headers, &schema.action_column)?;

    let mut samples = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        samples.push(Sample {
            env: parse_cell(&record, env_idx, &schema.env_column, line)?,
            action: parse_cell(&record, action_idx, &schema.action_column, line)?,
        });
    }
    if samples.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(Dataset {
        name: name.to_string(),
        env_label: schema.env_column.clone(),
        env_unit: String::new(),
        action_label: schema.action_column.clone(),
        action_unit: String::new(),
        samples,
    })
}

fn column_index(headers: &csv::StringRecord, column: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| Error::MissingColumn {
            column: column.to_string(),
        })
}

fn parse_cell<T: Real>(
    record: &csv::StringRecord,
    idx: usize,
    column: &str,
    line: u64,
) -> Result<T> {
    let cell = record.get(idx).unwrap_or("");
    cell.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .and_then(T::from_f64)
        .ok_or_else(|| Error::InvalidCell {
            row: line,
            column: column.to_string(),
            cell: cell.to_string(),
        })
}

/// Writes a dataset to a delimited file with a header row.
pub fn write_dataset<T: Real>(
    path: impl AsRef<Path>,
    dataset: &Dataset<T>,
    delimiter: u8,
) -> Result<()> {
    let mut file = File::create(path)?;
    dataset.write_to(&mut file, delimiter)
}

impl<T: Real> Dataset<T> {
    pub fn write_to<W: Write>(&self, w: &mut W, delimiter: u8) -> Result<()> {
        let d = char::from(delimiter);
        writeln!(w, "{}{}{}", self.env_label, d, self.action_label)?;
        for s in &self.samples {
            writeln!(w, "{}{}{}", s.env, d, s.action)?;
        }
        Ok(())
    }

    /// Replaces each environment value with a weighted average over the
    /// current row and up to two preceding rows (`weights` newest first).
    /// Rows near the start of the series use only the weights they have
    /// history for, renormalised. Blends in the preceding days' conditions
    /// when rows are consecutive days; the weights are user-chosen.
    pub fn smoothed_env(&self, weights: [T; 3]) -> Result<Dataset<T>> {
        let total = weights.iter().fold(T::zero(), |acc, w| acc + *w);
        if weights.iter().any(|w| !w.is_finite() || *w < T::zero()) || total <= T::zero() {
            return Err(Error::InvalidSmoothingWeights);
        }
        let mut out = self.clone();
        out.samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let mut num = T::zero();
                let mut den = T::zero();
                for (lag, w) in weights.iter().enumerate() {
                    if i >= lag {
                        num = num + *w * self.samples[i - lag].env;
                        den = den + *w;
                    }
                }
                let env = if den > T::zero() { num / den } else { s.env };
                Sample {
                    env,
                    action: s.action,
                }
            })
            .collect();
        Ok(out)
    }
}
