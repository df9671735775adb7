use std::fmt;
use std::sync::Arc;

use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::systems::{Point, ShiftSft, SystemModel};

type MapFn = dyn Fn(&Point) -> Result<Point> + Send + Sync;
type ModulusFn = dyn Fn(Dyadic) -> Dyadic + Send + Sync;

/// A conjugacy `π: X → Y` with `π ∘ T = S ∘ π`, its inverse, and a modulus
/// `δ` with `d_Y(πx, πy) ≤ δ(ε) ⇒ d_X(x, y) ≤ ε`.
///
/// Under that modulus `r(n, ε, K, T) ≤ r(n, δ(ε), πK, S)`; an isometric
/// pair has `δ(ε) = ε` both ways, so the counts agree exactly.
#[derive(Clone)]
pub struct ConjugacyPair {
    pub label: String,
    pub source: SystemModel,
    pub target: SystemModel,
    pub isometric: bool,
    forward: Arc<MapFn>,
    backward: Arc<MapFn>,
    modulus: Arc<ModulusFn>,
}

impl fmt::Debug for ConjugacyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConjugacyPair")
            .field("label", &self.label)
            .field("isometric", &self.isometric)
            .finish()
    }
}

impl ConjugacyPair {
    pub fn new<F, B, M>(
        label: impl Into<String>,
        source: SystemModel,
        target: SystemModel,
        forward: F,
        backward: B,
        modulus: M,
    ) -> Self
    where
        F: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
        B: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
        M: Fn(Dyadic) -> Dyadic + Send + Sync + 'static,
    {
        ConjugacyPair {
            label: label.into(),
            source,
            target,
            isometric: false,
            forward: Arc::new(forward),
            backward: Arc::new(backward),
            modulus: Arc::new(modulus),
        }
    }

    pub fn isometry<F, B>(
        label: impl Into<String>,
        source: SystemModel,
        target: SystemModel,
        forward: F,
        backward: B,
    ) -> Self
    where
        F: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
        B: Fn(&Point) -> Result<Point> + Send + Sync + 'static,
    {
        let mut pair = ConjugacyPair::new(label, source, target, forward, backward, |e| e);
        pair.isometric = true;
        pair
    }

    pub fn identity(system: SystemModel) -> Self {
        ConjugacyPair::isometry(
            "identity",
            system.clone(),
            system,
            |x| Ok(x.clone()),
            |x| Ok(x.clone()),
        )
    }

    /// Swapping two symbols of a shift; the result is the relabelled shift.
    pub fn symbol_swap(sft: &ShiftSft, a: u8, b: u8) -> Result<Self> {
        let m = sft.alphabet();
        if a as usize >= m || b as usize >= m {
            return Err(Error::domain(format!(
                "symbols {a}, {b} outside an alphabet of size {m}"
            )));
        }
        let swap = move |s: u8| {
            if s == a {
                b
            } else if s == b {
                a
            } else {
                s
            }
        };
        let t = sft.transitions();
        let relabelled: Vec<Vec<u8>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| t[swap(i as u8) as usize][swap(j as u8) as usize])
                    .collect()
            })
            .collect();
        let target = SystemModel::Shift(ShiftSft::new(relabelled)?);
        let map = move |x: &Point| match x {
            Point::Symbolic(p) => Ok(Point::Symbolic(p.map_symbols(swap))),
            _ => Err(Error::domain("symbolic point expected")),
        };
        Ok(ConjugacyPair::isometry(
            format!("swap {a}<->{b}"),
            SystemModel::Shift(sft.clone()),
            target,
            map,
            map,
        ))
    }

    pub fn forward(&self, x: &Point) -> Result<Point> {
        (self.forward)(x)
    }

    pub fn backward(&self, y: &Point) -> Result<Point> {
        (self.backward)(y)
    }

    pub fn modulus(&self, eps: Dyadic) -> Dyadic {
        (self.modulus)(eps)
    }

    /// First point among `points` where `π ∘ T ≠ S ∘ π` or `π⁻¹ ∘ π ≠ id`.
    pub fn find_violation(&self, points: &[Point]) -> Result<Option<Point>> {
        for x in points {
            let px = self.forward(x)?;
            if !self.target.contains(&px)
                || self.forward(&self.source.step(x)?)? != self.target.step(&px)?
                || self.backward(&px)? != *x
            {
                return Ok(Some(x.clone()));
            }
        }
        Ok(None)
    }
}
