//! Sample files: `#` header comments, then one distance per line.

use std::io::{BufRead, Write};

use gaussdist::{EmpiricalSample, SampleSource};

use crate::error::{CliError, CliResult};
use crate::format::num;

pub fn write_sample<W: Write + ?Sized>(
    out: &mut W,
    sample: &EmpiricalSample,
    method: &str,
) -> CliResult<()> {
    writeln!(out, "# gaussdist sample")?;
    writeln!(out, "# k={}", num(sample.k()))?;
    writeln!(out, "# n={}", sample.len())?;
    if let Some(seed) = sample.seed() {
        writeln!(out, "# seed={seed}")?;
    }
    writeln!(out, "# method={method}")?;
    writeln!(out, "# version={}", env!("CARGO_PKG_VERSION"))?;
    for &v in sample.values() {
        writeln!(out, "{}", num(v))?;
    }
    Ok(())
}

/// Reads distances, skipping `#` comments and blank lines. The sample is
/// tagged as external so it can be tested against any dimension.
pub fn read_sample<R: BufRead>(input: R, k: f64) -> CliResult<EmpiricalSample> {
    let mut values = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let v = text
            .parse::<f64>()
            .map_err(|_| CliError::input(format!("line {}: '{text}' is not a number", idx + 1)))?;
        values.push(v);
    }
    EmpiricalSample::new(values, k, None, SampleSource::External)
        .map_err(|e| CliError::input(format!("invalid sample: {e}")))
}
