use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{EstimationGrid, SampleSpec};
use crate::combinatorics::{count_candidates, Want};
use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::systems::{Point, SystemModel};

/// One evaluated `(n, ε, x, k)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub n: usize,
    pub eps: Dyadic,
    pub k: usize,
    pub x_id: usize,
    pub candidates: usize,
    /// Exact `r`, or the certified lower bound when `r_exact` is false.
    pub r: u64,
    pub r_upper: u64,
    pub r_exact: bool,
    pub log_r: f64,
    pub s_span: Option<u64>,
    pub s_exact: bool,
    pub near_ties: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum CellOutcome {
    Evaluated(CellRecord),
    EmptyPreimage {
        n: usize,
        eps: Dyadic,
        k: usize,
        x_id: usize,
    },
    Skipped {
        n: usize,
        eps: Dyadic,
        k: usize,
        x_id: usize,
        reason: SkipReason,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// Upper bound on `|T^{-k}(x)|` above the candidate cap.
    Candidates { bound: u128 },
    /// Distance comparisons above the solver's pair limit.
    Pairs { pairs: u64 },
    /// No sample of the space could be built within the candidate cap.
    NoSample,
}

/// The supremum over sampled `(x, k)` for one `(n, ε)`, with its witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupRecord {
    pub n: usize,
    pub eps: Dyadic,
    pub best_k: usize,
    pub best_x: usize,
    pub r: u64,
    pub r_exact: bool,
    pub log_r: f64,
    /// Supremum of `log s` over the same cells, when computed.
    pub log_s: Option<f64>,
    /// A depth `k ≤ n + c + 1` was skipped, so the supremum may be short
    /// of saturation; such points are left out of the fits.
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateSeries {
    pub ns: Vec<usize>,
    pub eps: Vec<Dyadic>,
    pub samples: Vec<String>,
    pub cells: Vec<CellOutcome>,
    /// `sup[e][i]` is the supremum at `eps[e]`, `ns[i]`; `None` means no data.
    pub sup: Vec<Vec<Option<SupRecord>>>,
}

impl EstimateSeries {
    /// `(n, a_n(ε))` pairs that have data, for the `e`-th scale.
    pub fn a_n(&self, e: usize) -> (Vec<usize>, Vec<f64>) {
        self.ns
            .iter()
            .zip(&self.sup[e])
            .filter_map(|(&n, rec)| rec.as_ref().filter(|r| !r.truncated).map(|r| (n, r.log_r)))
            .unzip()
    }

    pub fn spanning_a_n(&self, e: usize) -> (Vec<usize>, Vec<f64>) {
        self.ns
            .iter()
            .zip(&self.sup[e])
            .filter_map(|(&n, rec)| {
                rec.as_ref()
                    .filter(|r| !r.truncated)
                    .and_then(|r| r.log_s.map(|v| (n, v)))
            })
            .unzip()
    }

    pub fn approximate_records(&self) -> usize {
        self.sup
            .iter()
            .flatten()
            .flatten()
            .filter(|r| !r.r_exact)
            .count()
    }

    pub fn truncated_points(&self) -> usize {
        self.sup
            .iter()
            .flatten()
            .flatten()
            .filter(|r| r.truncated)
            .count()
    }

    pub fn skipped_cells(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| matches!(c, CellOutcome::Skipped { .. }))
            .count()
    }

    pub fn near_ties(&self) -> u64 {
        self.cells
            .iter()
            .map(|c| match c {
                CellOutcome::Evaluated(r) => r.near_ties,
                _ => 0,
            })
            .sum()
    }
}

pub(crate) fn sample_points(sys: &SystemModel, spec: &SampleSpec) -> Result<Vec<Point>> {
    let pts = match spec {
        SampleSpec::Default => sys.default_samples(),
        SampleSpec::Explicit(p) => {
            for x in p {
                if !sys.contains(x) {
                    return Err(Error::domain(format!(
                        "sample point {x} is outside the system"
                    )));
                }
            }
            p.clone()
        }
    };
    if pts.is_empty() {
        return Err(Error::NoData("the sample of points x is empty".into()));
    }
    Ok(pts)
}

pub(crate) fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

pub(crate) fn evaluate_cell(
    sys: &SystemModel,
    x: &Point,
    x_id: usize,
    n: usize,
    k: usize,
    eps: Dyadic,
    grid: &EstimationGrid,
) -> Result<CellOutcome> {
    let bound = sys.preimage_count_bound(x, k);
    if bound > grid.max_candidates as u128 {
        let reason = SkipReason::Candidates { bound };
        return Ok(CellOutcome::Skipped {
            n,
            eps,
            k,
            x_id,
            reason,
        });
    }
    let pre = sys.preimage_set(x, k)?;
    if pre.is_empty() {
        return Ok(CellOutcome::EmptyPreimage { n, eps, k, x_id });
    }
    let want = if grid.spanning_proxy {
        Want::Both
    } else {
        Want::Separated
    };
    let res = match count_candidates(sys, &pre, n, eps, want, &grid.solver) {
        Err(Error::TooDense { pairs, .. }) => {
            let reason = SkipReason::Pairs { pairs };
            return Ok(CellOutcome::Skipped {
                n,
                eps,
                k,
                x_id,
                reason,
            });
        }
        other => other?,
    };
    let r = res.r.expect("separated count requested");
    let s = res.s;
    Ok(CellOutcome::Evaluated(CellRecord {
        n,
        eps,
        k,
        x_id,
        candidates: pre.len(),
        r: r.lower,
        r_upper: r.upper,
        r_exact: r.exact,
        log_r: (r.lower as f64).ln(),
        s_span: s.map(|b| b.upper),
        s_exact: s.is_some_and(|b| b.exact),
        near_ties: res.stats.near_ties,
    }))
}

/// Reduces cells to the supremum: max by `r`, ties to the least
/// `(x_id, k)`, independent of evaluation order.
fn reduce(cells: &[&CellRecord]) -> Option<SupRecord> {
    let best = cells
        .iter()
        .max_by(|a, b| a.r.cmp(&b.r).then((b.x_id, b.k).cmp(&(a.x_id, a.k))))?;
    let log_s = cells
        .iter()
        .filter_map(|c| c.s_span)
        .max()
        .map(|s| (s as f64).ln());
    Some(SupRecord {
        n: best.n,
        eps: best.eps,
        best_k: best.k,
        best_x: best.x_id,
        r: best.r,
        r_exact: best.r_exact,
        log_r: best.log_r,
        log_s,
        truncated: false,
    })
}

/// `sup over sampled x and k ≥ n` of `log r(n, ε, T^{-k}(x), T)`.
pub fn sup_log_r(
    sys: &SystemModel,
    n: usize,
    eps: Dyadic,
    grid: &EstimationGrid,
) -> Result<SupRecord> {
    let samples = sample_points(sys, &grid.samples)?;
    let ks = grid.k_policy.depths(n, eps);
    let mut records = Vec::new();
    for (x_id, x) in samples.iter().enumerate() {
        for &k in &ks {
            if let CellOutcome::Evaluated(r) = evaluate_cell(sys, x, x_id, n, k, eps, grid)? {
                records.push(r);
            }
        }
    }
    reduce(&records.iter().collect::<Vec<_>>()).ok_or_else(|| {
        Error::NoData(format!(
            "every sampled preimage set is empty or skipped at n={n}, ε={eps}"
        ))
    })
}

/// Evaluates every cell of the grid (in parallel) and reduces per `(n, ε)`.
pub fn build_series(sys: &SystemModel, grid: &EstimationGrid) -> Result<EstimateSeries> {
    grid.validate()?;
    let samples = sample_points(sys, &grid.samples)?;
    let mut tasks = Vec::new();
    for &eps in &grid.eps {
        for &n in &grid.ns {
            for x_id in 0..samples.len() {
                for k in grid.k_policy.depths(n, eps) {
                    tasks.push((n, eps, x_id, k));
                }
            }
        }
    }
    let cells: Vec<CellOutcome> = with_pool(grid.threads, || {
        tasks
            .par_iter()
            .map(|&(n, eps, x_id, k)| evaluate_cell(sys, &samples[x_id], x_id, n, k, eps, grid))
            .collect::<Result<Vec<_>>>()
    })?;
    let sup = grid
        .eps
        .iter()
        .map(|&eps| {
            grid.ns
                .iter()
                .map(|&n| {
                    let recs: Vec<&CellRecord> = cells
                        .iter()
                        .filter_map(|c| match c {
                            CellOutcome::Evaluated(r) if r.n == n && r.eps == eps => Some(r),
                            _ => None,
                        })
                        .collect();
                    let saturation = n + eps.separating_depth() + 1;
                    let truncated = cells.iter().any(|c| {
                        matches!(c, CellOutcome::Skipped { n: cn, eps: ce, k, .. }
                            if *cn == n && *ce == eps && *k <= saturation)
                    });
                    reduce(&recs).map(|r| SupRecord { truncated, ..r })
                })
                .collect()
        })
        .collect();
    Ok(EstimateSeries {
        ns: grid.ns.clone(),
        eps: grid.eps.clone(),
        samples: samples.iter().map(ToString::to_string).collect(),
        cells,
        sup,
    })
}
