//! CSV and JSON output with the resolved configuration embedded.
//!
//! CSV files begin with `#`-prefixed lines holding the configuration as TOML,
//! followed by a header row. JSON files are objects with `config` and `result`
//! members. Nothing time-dependent is written, so equal inputs give
//! byte-identical files.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::bogoliubov::BogoliubovEntry;
use crate::error::{Error, Result};
use crate::spacetime::Quadrant;

fn config_comment<C: Serialize>(config: &C) -> Result<String> {
    let text = toml::to_string(config).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = String::from("# resolved configuration\n");
    for line in text.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    Ok(out)
}

/// Write `rows` as CSV beneath a commented copy of `config`.
pub fn write_csv<W, C, R>(mut out: W, config: &C, rows: &[R]) -> Result<()>
where
    W: Write,
    C: Serialize,
    R: Serialize,
{
    out.write_all(config_comment(config)?.as_bytes())?;
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Envelope<'a, C, T> {
    config: &'a C,
    result: &'a T,
}

pub fn write_json<W, C, T>(mut out: W, config: &C, result: &T) -> Result<()>
where
    W: Write,
    C: Serialize,
    T: Serialize,
{
    serde_json::to_writer_pretty(&mut out, &Envelope { config, result })?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One row of a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub quadrant: Quadrant,
    pub omega: f64,
    pub k: f64,
    /// Regulator; 0 for extrapolated rows.
    pub delta: f64,
    pub re_alpha: f64,
    pub im_alpha: f64,
    pub re_beta: f64,
    pub im_beta: f64,
    pub err: f64,
}

pub const COEFFICIENT_COLUMNS: [&str; 9] =
    ["quadrant", "omega", "k", "delta", "re_alpha", "im_alpha", "re_beta", "im_beta", "err"];

impl From<&BogoliubovEntry> for CoefficientRecord {
    fn from(e: &BogoliubovEntry) -> Self {
        CoefficientRecord {
            quadrant: e.quadrant,
            omega: e.omega,
            k: e.k,
            delta: if e.extrapolated { 0.0 } else { e.regulator_delta },
            re_alpha: e.alpha.re,
            im_alpha: e.alpha.im,
            re_beta: e.beta.re,
            im_beta: e.beta.im,
            err: e.error,
        }
    }
}

impl CoefficientRecord {
    pub fn validate(&self) -> Result<()> {
        let values = [
            self.omega, self.k, self.delta, self.re_alpha, self.im_alpha, self.re_beta, self.im_beta, self.err,
        ];
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parse("coefficient row contains a non-finite value".into()));
        }
        if !(self.omega > 0.0 && self.k > 0.0) {
            return Err(Error::Parse("omega and k must be positive".into()));
        }
        if self.delta < 0.0 || self.err < 0.0 {
            return Err(Error::Parse("delta and err must be non-negative".into()));
        }
        Ok(())
    }
}

/// Read a coefficient table, skipping `#` comment lines and requiring the
/// exact column set in order.
pub fn read_coefficients<R: Read>(input: R) -> Result<Vec<CoefficientRecord>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let headers = reader.headers()?.clone();
    if headers.iter().ne(COEFFICIENT_COLUMNS.iter().copied()) {
        return Err(Error::Parse(format!(
            "expected columns {}, found {}",
            COEFFICIENT_COLUMNS.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for record in reader.deserialize() {
        let row: CoefficientRecord = record?;
        row.validate()?;
        rows.push(row);
    }
    Ok(rows)
}
