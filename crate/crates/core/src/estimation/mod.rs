//! Finite-scale estimates of preimage entropy, `s`-preimage entropy and
//! preimage entropy dimension.
//!
//! For each `(n, ε)` the supremum `a_n(ε) = sup log r(n, ε, T^{-k}(x), T)` is
//! taken over a documented sample of points `x` and depths `k ≥ n`. The
//! limits in `n` and `ε` are replaced by fits over the window of `n` and a
//! per-ε table whose smallest ε is the headline.

mod estimates;
mod fit;
mod grid;
mod output;
mod series;

pub use estimates::{
    estimate, estimate_dimension, estimate_preimage_entropy, estimate_topological_s_entropy,
    power_curve_comparison, s_entropy_curve, CurvePoint, DeclaredSample, Diagnostics,
    DimensionEstimate, EntropyEstimate, EpsDimension, EpsEntropy, Estimate, Trend,
};
pub use fit::{critical_exponent, growth_coefficient, linear_fit, log_log_slope, ExponentFit};
pub use grid::{EstimationGrid, KPolicy, SampleSpec, DEFAULT_MAX_CANDIDATES, DEFAULT_TAU};
pub use output::{summary_json, write_csv, Summary, CSV_HEADER};
pub(crate) use series::with_pool;
pub use series::{
    build_series, sup_log_r, CellOutcome, CellRecord, EstimateSeries, SkipReason, SupRecord,
};
