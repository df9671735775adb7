use std::io::Write;

use serde::Serialize;

use super::estimates::{CurvePoint, Diagnostics, EpsDimension, EpsEntropy, Estimate};
use super::series::CellOutcome;
use crate::error::Result;

pub const CSV_HEADER: [&str; 10] = [
    "system_id",
    "n",
    "k",
    "eps",
    "x_id",
    "r",
    "r_exact",
    "log_r",
    "s",
    "value",
];

/// One row per evaluated cell, then one row per curve point (`n`, `k`,
/// `x_id`, `r` left blank). Rows are in grid order, so output is stable.
pub fn write_csv<W: Write>(est: &Estimate, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for cell in &est.series.cells {
        if let CellOutcome::Evaluated(c) = cell {
            w.write_record([
                est.system_id.clone(),
                c.n.to_string(),
                c.k.to_string(),
                c.eps.to_string(),
                c.x_id.to_string(),
                c.r.to_string(),
                c.r_exact.to_string(),
                format!("{:.12}", c.log_r),
                String::new(),
                String::new(),
            ])?;
        }
    }
    for p in &est.curve {
        w.write_record([
            est.system_id.clone(),
            String::new(),
            String::new(),
            p.eps.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            p.s.to_string(),
            format!("{:.12}", p.value),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionSummary {
    pub slope: f64,
    pub spread: f64,
    pub per_eps: Vec<EpsDimension>,
}

/// The JSON summary document.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub system_id: String,
    pub h_pre: f64,
    pub h_pre_log2: f64,
    pub per_eps: Vec<EpsEntropy>,
    pub dimension: Option<DimensionSummary>,
    pub curve: Vec<CurvePoint>,
    pub samples: Vec<String>,
    pub diagnostics: Diagnostics,
}

impl Summary {
    pub fn of(est: &Estimate) -> Self {
        Summary {
            system_id: est.system_id.clone(),
            h_pre: est.entropy.value,
            h_pre_log2: est.entropy.value_log2,
            per_eps: est.entropy.per_eps.clone(),
            dimension: est.dimension.as_ref().map(|d| DimensionSummary {
                slope: d.slope,
                spread: d.spread,
                per_eps: d.per_eps.clone(),
            }),
            curve: est.curve.clone(),
            samples: est.series.samples.clone(),
            diagnostics: est.diagnostics.clone(),
        }
    }
}

pub fn summary_json(est: &Estimate) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Summary::of(est))?)
}
