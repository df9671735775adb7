//! Dynamical systems with exact preimage enumeration.

mod definition;
mod finite;
mod metric;
mod model;
mod piecewise;
mod point;
pub mod shift;

pub use definition::{from_json, load, resolve, to_json, SystemDoc, BUILTIN_NAMES, SCHEMA_VERSION};
pub use finite::FiniteMap;
pub use metric::MetricPair;
pub use model::{InvariantSubset, Restricted, SeparationKey, SystemModel};
pub use piecewise::{Branch, PiecewiseLinearMap};
pub use point::{Point, SymbolicPoint};
pub use shift::ShiftSft;

/// Makes the product system `a × b` with the max metric.
pub fn make_product(a: SystemModel, b: SystemModel) -> SystemModel {
    SystemModel::product(a, b)
}

/// Makes the power system `a^m`; `m = 0` is rejected.
pub fn make_power(a: SystemModel, m: usize) -> crate::Result<SystemModel> {
    SystemModel::power(a, m)
}
