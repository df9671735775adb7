use std::fmt;
use std::sync::Arc;

use super::model::SystemModel;
use super::point::Point;
use super::shift;
use crate::eps::Dyadic;
use crate::error::{Error, Result};

type DistanceFn = dyn Fn(&SystemModel, &Point, &Point) -> Result<f64> + Send + Sync;
type ModulusFn = dyn Fn(Dyadic) -> Dyadic + Send + Sync;

/// Two compatible metrics on one system, `d₁` (the system's own) and `d₂`,
/// together with a modulus `δ` such that `d₁(x, y) < δ(ε)` implies
/// `d₂(x, y) < ε`.
#[derive(Clone)]
pub struct MetricPair {
    pub system: SystemModel,
    label: String,
    alternate: Arc<DistanceFn>,
    modulus: Arc<ModulusFn>,
}

impl fmt::Debug for MetricPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricPair")
            .field("system", &self.system.variant_name())
            .field("alternate", &self.label)
            .finish()
    }
}

impl MetricPair {
    pub fn new<D, M>(
        system: SystemModel,
        label: impl Into<String>,
        alternate: D,
        modulus: M,
    ) -> Self
    where
        D: Fn(&SystemModel, &Point, &Point) -> Result<f64> + Send + Sync + 'static,
        M: Fn(Dyadic) -> Dyadic + Send + Sync + 'static,
    {
        MetricPair {
            system,
            label: label.into(),
            alternate: Arc::new(alternate),
            modulus: Arc::new(modulus),
        }
    }

    /// `d₂ = d₁` with `δ(ε) = ε`.
    pub fn identity(system: SystemModel) -> Self {
        MetricPair::new(system, "identity", |s, x, y| s.distance(x, y), |e| e)
    }

    /// `d₂ = 2^p · d₁` with `δ(ε) = ε / 2^p`.
    pub fn scaled(system: SystemModel, log2_factor: u32) -> Self {
        let factor = (1u64 << log2_factor) as f64;
        MetricPair::new(
            system,
            format!("scaled x{factor}"),
            move |s, x, y| Ok(factor * s.distance(x, y)?),
            move |e| {
                let mut d = e;
                for _ in 0..log2_factor {
                    d = d.half();
                }
                d
            },
        )
    }

    /// On a shift space, `d₂(x, y) = 2^-min{i : x_i ≠ y_i}` with
    /// `δ(ε) = ε / 2`.
    pub fn first_disagreement(system: SystemModel) -> Result<Self> {
        if !matches!(system, SystemModel::Shift(_)) {
            return Err(Error::domain(
                "first-disagreement metric needs a shift system",
            ));
        }
        Ok(MetricPair::new(
            system,
            "first-disagreement",
            |s, x, y| {
                s.distance(x, y)?;
                match (x, y) {
                    (Point::Symbolic(a), Point::Symbolic(b)) => Ok(shift::first_disagreement(a, b)),
                    _ => Err(Error::domain("symbolic points expected")),
                }
            },
            |e| e.half(),
        ))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn alternate_distance(&self, x: &Point, y: &Point) -> Result<f64> {
        (self.alternate)(&self.system, x, y)
    }

    pub fn modulus(&self, eps: Dyadic) -> Dyadic {
        (self.modulus)(eps)
    }

    /// Finds a pair violating `d₁ < δ(ε) ⇒ d₂ < ε`, if any.
    pub fn find_violation(&self, points: &[Point], eps: Dyadic) -> Result<Option<(Point, Point)>> {
        let delta = self.modulus(eps).value();
        for (i, x) in points.iter().enumerate() {
            for y in &points[i + 1..] {
                let d1 = self.system.distance(x, y)?;
                if d1 < delta && self.alternate_distance(x, y)? >= eps.value() {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        Ok(None)
    }
}
