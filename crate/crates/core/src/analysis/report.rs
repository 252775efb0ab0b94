//! CSV forms of norm reports and decay fits.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::catalogue::{theoretical_exponent, NormReport, CATALOGUE};
use super::fit::{fit_decay_with, Abscissa};
use crate::error::{Error, Result};

/// One line of the decay table. Fit columns are empty when the window
/// holds too few points or the series is not positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub norm: String,
    pub exponent: Option<f64>,
    pub theory: Option<f64>,
    pub delta: Option<f64>,
    #[serde(rename = "R2")]
    pub r2: Option<f64>,
    pub t1: f64,
    pub t2: f64,
}

/// Header `time,<catalogue names>`, one row per snapshot.
pub fn write_norms_csv<W: Write>(w: W, reports: &[NormReport]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    let mut header = vec!["time"];
    header.extend_from_slice(CATALOGUE);
    wr.write_record(&header)?;
    for r in reports {
        let mut rec = vec![r.time.to_string()];
        rec.extend(r.values.iter().map(|v| v.to_string()));
        wr.write_record(&rec)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_norms_csv<R: Read>(r: R) -> Result<Vec<NormReport>> {
    let mut rdr = csv::Reader::from_reader(r);
    let header = rdr.headers()?.clone();
    let names: Vec<&str> = header.iter().collect();
    if names.first() != Some(&"time") || names[1..] != *CATALOGUE {
        return Err(Error::Format("norm table header does not match the catalogue".into()));
    }
    rdr.records()
        .map(|rec| {
            let rec = rec?;
            let nums: Vec<f64> = rec
                .iter()
                .map(|s| s.parse::<f64>().map_err(|e| Error::Format(format!("bad number {s:?}: {e}"))))
                .collect::<Result<_>>()?;
            Ok(NormReport { time: nums[0], values: nums[1..].to_vec() })
        })
        .collect()
}

/// Fits every catalogue norm over `window`.
pub fn decay_table(reports: &[NormReport], window: (f64, f64), abscissa: Abscissa) -> Vec<DecayRow> {
    CATALOGUE
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let series: Vec<(f64, f64)> = reports.iter().map(|r| (r.time, r.values[i])).collect();
            let fit = fit_decay_with(&series, window, abscissa).ok();
            let theory = theoretical_exponent(name);
            let exponent = fit.map(|f| f.exponent);
            DecayRow {
                norm: name.to_string(),
                exponent,
                theory,
                delta: exponent.zip(theory).map(|(e, t)| e - t),
                r2: fit.map(|f| f.r2),
                t1: window.0,
                t2: window.1,
            }
        })
        .collect()
}

pub fn write_decay_csv<W: Write>(w: W, rows: &[DecayRow]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for row in rows {
        wr.serialize(row)?;
    }
    wr.flush()?;
    Ok(())
}

pub fn read_decay_csv<R: Read>(r: R) -> Result<Vec<DecayRow>> {
    csv::Reader::from_reader(r).deserialize().map(|row| Ok(row?)).collect()
}
