use std::fmt;

use serde::{Deserialize, Serialize};

use super::fit::{critical_exponent, growth_coefficient, log_log_slope};
use super::grid::EstimationGrid;
use super::series::{
    build_series, with_pool, CellOutcome, CellRecord, EstimateSeries, SkipReason, SupRecord,
};
use crate::combinatorics::{count_candidates, Want};
use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::systems::{Point, SystemModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsEntropy {
    pub eps: Dyadic,
    /// Least-squares slope of `a_n(ε)` against `n`.
    pub value: f64,
    pub value_log2: f64,
    /// `a_N(ε) / N` at the largest window with data.
    pub ratio_at_max_n: f64,
    /// The same slope computed from spanning counts.
    pub spanning_value: Option<f64>,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    /// Value at the smallest ε with data.
    pub value: f64,
    pub value_log2: f64,
    pub per_eps: Vec<EpsEntropy>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    /// `a_n / n^s` grows without bound over the window (→ ∞).
    Increasing,
    Finite,
    /// `a_n / n^s` tends to zero (→ 0).
    Decreasing,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Increasing => "increasing",
            Trend::Finite => "finite",
            Trend::Decreasing => "decreasing",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub s: f64,
    pub eps: Dyadic,
    /// Least-squares slope of `a_n` against `n^s`.
    pub value: f64,
    pub ratio_at_max_n: f64,
    /// Direction of `a_n / n^s` across the window, literally.
    pub raw_trend: Trend,
    /// Classification from the fitted exponent with band τ.
    pub class: Trend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsDimension {
    pub eps: Dyadic,
    pub exponent: f64,
    pub log_log_slope: Option<f64>,
    pub residual: f64,
    pub window: (usize, usize),
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    /// Fitted critical exponent at the smallest ε with enough data.
    pub slope: f64,
    /// Max minus min of the per-ε exponents.
    pub spread: f64,
    pub per_eps: Vec<EpsDimension>,
    pub classification: Vec<(f64, Trend)>,
}

fn entropy_from_series(series: &EstimateSeries) -> Result<EntropyEstimate> {
    let mut per_eps = Vec::new();
    for (e, &eps) in series.eps.iter().enumerate() {
        let (ns, a) = series.a_n(e);
        let Some(&n_max) = ns.last() else { continue };
        let a_max = *a.last().expect("same length");
        let value = growth_coefficient(&ns, &a, 1.0).unwrap_or(a_max / n_max as f64);
        let (sns, sa) = series.spanning_a_n(e);
        per_eps.push(EpsEntropy {
            eps,
            value,
            value_log2: value / std::f64::consts::LN_2,
            ratio_at_max_n: a_max / n_max as f64,
            spanning_value: growth_coefficient(&sns, &sa, 1.0),
            points: ns.len(),
        });
    }
    let last = per_eps.last().ok_or_else(|| {
        Error::NoData("no (n, ε) point has a count short of the candidate cap".into())
    })?;
    Ok(EntropyEstimate {
        value: last.value,
        value_log2: last.value_log2,
        per_eps,
    })
}

fn dimension_from_series(
    series: &EstimateSeries,
    s_values: &[f64],
    tau: f64,
) -> Result<DimensionEstimate> {
    let mut per_eps = Vec::new();
    for (e, &eps) in series.eps.iter().enumerate() {
        let (ns, a) = series.a_n(e);
        if let Some(fit) = critical_exponent(&ns, &a) {
            per_eps.push(EpsDimension {
                eps,
                exponent: fit.exponent,
                log_log_slope: log_log_slope(&ns, &a),
                residual: fit.residual,
                window: (ns[0], *ns.last().expect("nonempty")),
                points: ns.len(),
            });
        }
    }
    let headline = per_eps.last().ok_or_else(|| {
        Error::InsufficientData("dimension needs at least 3 window lengths with data".into())
    })?;
    let slope = headline.exponent;
    let lo = per_eps
        .iter()
        .map(|d| d.exponent)
        .fold(f64::INFINITY, f64::min);
    let hi = per_eps
        .iter()
        .map(|d| d.exponent)
        .fold(f64::NEG_INFINITY, f64::max);
    let classification = s_values
        .iter()
        .map(|&s| (s, classify(slope, s, tau)))
        .collect();
    Ok(DimensionEstimate {
        slope,
        spread: hi - lo,
        per_eps,
        classification,
    })
}

fn classify(exponent: f64, s: f64, tau: f64) -> Trend {
    if s < exponent - tau {
        Trend::Increasing
    } else if s > exponent + tau {
        Trend::Decreasing
    } else {
        Trend::Finite
    }
}

fn raw_trend(ratios: &[f64]) -> Trend {
    let diffs: Vec<f64> = ratios.windows(2).map(|w| w[1] - w[0]).collect();
    if !diffs.is_empty() && diffs.iter().all(|&d| d > 1e-12) {
        Trend::Increasing
    } else if (!diffs.is_empty() && diffs.iter().all(|&d| d < -1e-12))
        || ratios.iter().all(|&r| r == 0.0)
    {
        Trend::Decreasing
    } else {
        Trend::Finite
    }
}

fn curve_from_series(series: &EstimateSeries, s_values: &[f64], tau: f64) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for &s in s_values {
        for (e, &eps) in series.eps.iter().enumerate() {
            let (ns, a) = series.a_n(e);
            if ns.is_empty() {
                continue;
            }
            let ratios: Vec<f64> = ns
                .iter()
                .zip(&a)
                .map(|(&n, &v)| v / (n as f64).powf(s))
                .collect();
            let ratio_at_max_n = *ratios.last().expect("nonempty");
            let value = growth_coefficient(&ns, &a, s).unwrap_or(ratio_at_max_n);
            let raw = raw_trend(&ratios);
            let class = match critical_exponent(&ns, &a) {
                Some(fit) => classify(fit.exponent, s, tau),
                None => raw,
            };
            out.push(CurvePoint {
                s,
                eps,
                value,
                ratio_at_max_n,
                raw_trend: raw,
                class,
            });
        }
    }
    out
}

/// Finite-scale preimage entropy: per ε the growth rate of `a_n(ε)` in `n`,
/// headline at the smallest ε.
pub fn estimate_preimage_entropy(
    sys: &SystemModel,
    grid: &EstimationGrid,
) -> Result<EntropyEstimate> {
    entropy_from_series(&build_series(sys, grid)?)
}

/// `s ↦` finite-scale `s`-preimage entropy per ε. At `s = 1` the values
/// coincide with [`estimate_preimage_entropy`].
pub fn s_entropy_curve(sys: &SystemModel, grid: &EstimationGrid) -> Result<Vec<CurvePoint>> {
    let series = build_series(sys, grid)?;
    if series.sup.iter().flatten().all(Option::is_none) {
        return Err(Error::NoData("no (n, ε) cell produced a count".into()));
    }
    Ok(curve_from_series(&series, &grid.s_values, grid.tau))
}

/// Critical exponent of `a_n(ε) ~ c + A n^s`, i.e. the finite-scale preimage
/// entropy dimension.
pub fn estimate_dimension(sys: &SystemModel, grid: &EstimationGrid) -> Result<DimensionEstimate> {
    dimension_from_series(&build_series(sys, grid)?, &grid.s_values, grid.tau)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub skipped_cells: usize,
    pub truncated_points: usize,
    pub approximate_records: usize,
    pub near_ties: u64,
}

/// Everything one estimation run produces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub system_id: String,
    pub entropy: EntropyEstimate,
    pub dimension: Option<DimensionEstimate>,
    pub curve: Vec<CurvePoint>,
    pub series: EstimateSeries,
    pub diagnostics: Diagnostics,
}

pub fn estimate(sys: &SystemModel, system_id: &str, grid: &EstimationGrid) -> Result<Estimate> {
    let series = build_series(sys, grid)?;
    from_series(system_id, series, grid)
}

pub(crate) fn from_series(
    system_id: &str,
    series: EstimateSeries,
    grid: &EstimationGrid,
) -> Result<Estimate> {
    let entropy = entropy_from_series(&series)?;
    let dimension = match dimension_from_series(&series, &grid.s_values, grid.tau) {
        Ok(d) => Some(d),
        Err(Error::InsufficientData(_)) => None,
        Err(e) => return Err(e),
    };
    let curve = curve_from_series(&series, &grid.s_values, grid.tau);
    let diagnostics = Diagnostics {
        skipped_cells: series.skipped_cells(),
        truncated_points: series.truncated_points(),
        approximate_records: series.approximate_records(),
        near_ties: series.near_ties(),
    };
    Ok(Estimate {
        system_id: system_id.to_string(),
        entropy,
        dimension,
        curve,
        series,
        diagnostics,
    })
}

/// A user-supplied sample of the whole space with its declared density in
/// the Bowen metric.
#[derive(Debug, Clone, PartialEq)]
pub struct DeclaredSample {
    pub points: Vec<Point>,
    pub density: f64,
}

/// Same machinery as the preimage estimates with `K` a dense sample of the
/// whole space, giving the `s`-topological entropy and entropy dimension.
pub fn estimate_topological_s_entropy(
    sys: &SystemModel,
    system_id: &str,
    grid: &EstimationGrid,
    declared: Option<&DeclaredSample>,
) -> Result<Estimate> {
    grid.validate()?;
    if let Some(d) = declared {
        for &eps in &grid.eps {
            if d.density > eps.value() / 2.0 {
                return Err(Error::SampleTooCoarse(format!(
                    "declared density {} exceeds ε/2 = {} at ε = {eps}; a sample at least {}-dense is required",
                    d.density,
                    eps.value() / 2.0,
                    eps.value() / 2.0
                )));
            }
        }
    }
    let mut tasks = Vec::new();
    for &eps in &grid.eps {
        for &n in &grid.ns {
            tasks.push((n, eps));
        }
    }
    use rayon::prelude::*;
    let cells: Vec<CellOutcome> = with_pool(grid.threads, || {
        tasks
            .par_iter()
            .map(|&(n, eps)| {
                let sample = match declared {
                    Some(d) => Some(d.points.clone()),
                    None => sys.space_sample(n, eps, grid.max_candidates),
                };
                let Some(sample) = sample else {
                    let reason = SkipReason::NoSample;
                    return Ok(CellOutcome::Skipped {
                        n,
                        eps,
                        k: 0,
                        x_id: 0,
                        reason,
                    });
                };
                let res =
                    match count_candidates(sys, &sample, n, eps, Want::Separated, &grid.solver) {
                        Err(Error::TooDense { pairs, .. }) => {
                            let reason = SkipReason::Pairs { pairs };
                            return Ok(CellOutcome::Skipped {
                                n,
                                eps,
                                k: 0,
                                x_id: 0,
                                reason,
                            });
                        }
                        other => other?,
                    };
                let r = res.r.expect("requested");
                Ok(CellOutcome::Evaluated(CellRecord {
                    n,
                    eps,
                    k: 0,
                    x_id: 0,
                    candidates: sample.len(),
                    r: r.lower,
                    r_upper: r.upper,
                    r_exact: r.exact,
                    log_r: (r.lower as f64).ln(),
                    s_span: None,
                    s_exact: false,
                    near_ties: res.stats.near_ties,
                }))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let sup = grid
        .eps
        .iter()
        .map(|&eps| {
            grid.ns
                .iter()
                .map(|&n| {
                    cells.iter().find_map(|c| match c {
                        CellOutcome::Evaluated(r) if r.n == n && r.eps == eps => Some(SupRecord {
                            n,
                            eps,
                            best_k: 0,
                            best_x: 0,
                            r: r.r,
                            r_exact: r.r_exact,
                            log_r: r.log_r,
                            log_s: None,
                            truncated: false,
                        }),
                        _ => None,
                    })
                })
                .collect()
        })
        .collect();
    let series = EstimateSeries {
        ns: grid.ns.clone(),
        eps: grid.eps.clone(),
        samples: vec!["space".into()],
        cells,
        sup,
    };
    from_series(system_id, series, grid)
}

/// Compares the topological curve of `T^m` with `m^s` times that of `T`
/// at each `(s, ε)`: `(s, ε, value for T^m, m^s · value for T)`.
pub fn power_curve_comparison(
    base: &Estimate,
    power: &Estimate,
    m: usize,
) -> Vec<(f64, Dyadic, f64, f64)> {
    power
        .curve
        .iter()
        .filter_map(|p| {
            base.curve
                .iter()
                .find(|b| b.s == p.s && b.eps == p.eps)
                .map(|b| (p.s, p.eps, p.value, (m as f64).powf(p.s) * b.value))
        })
        .collect()
}
