//! Delimited numeric datasets.
//!
//! Plain fields only, no quoting. The first line is treated as a header
//! when any of its fields fails to parse as a number.

use std::io::Read;

use gaussdist::DatasetMatrix;

use crate::error::{CliError, CliResult};

pub fn read_dataset<R: Read>(input: R, delimiter: u8) -> CliResult<DatasetMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .delimiter(delimiter)
        .from_reader(input);

    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| CliError::input(format!("cannot read dataset: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Vec<Result<f64, &str>> = record
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| f))
            .collect();
        if std::mem::take(&mut first) && parsed.iter().any(Result::is_err) {
            width = Some(record.len());
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(CliError::input(format!(
                "line {line}: expected {expected} fields, found {}",
                record.len()
            )));
        }
        let row = parsed
            .into_iter()
            .enumerate()
            .map(|(col, v)| {
                v.map_err(|field| {
                    CliError::input(format!(
                        "line {line}: row {}, column {}: '{field}' is not a number",
                        rows.len() + 1,
                        col + 1
                    ))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(DatasetMatrix::from_rows(&rows)?)
}
