//! Piecewise affine maps of `[0, 1]` (interval or circle) with explicit
//! inverse branches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub lo: f64,
    pub hi: f64,
    /// Whether `hi` itself belongs to the branch domain. `lo` always does.
    #[serde(default = "closed")]
    pub hi_closed: bool,
    pub slope: f64,
    pub intercept: f64,
}

fn closed() -> bool {
    true
}

impl Branch {
    fn in_domain(&self, x: f64) -> bool {
        x >= self.lo && (x < self.hi || (self.hi_closed && x == self.hi))
    }

    fn apply(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearMap {
    branches: Vec<Branch>,
    circle: bool,
}

impl PiecewiseLinearMap {
    pub fn new(branches: Vec<Branch>, circle: bool) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::domain("piecewise map needs at least one branch"));
        }
        for b in &branches {
            if !(0.0..=1.0).contains(&b.lo) || !(0.0..=1.0).contains(&b.hi) || b.lo > b.hi {
                return Err(Error::domain(format!(
                    "bad branch domain [{}, {}]",
                    b.lo, b.hi
                )));
            }
            if b.slope == 0.0 || !b.slope.is_finite() || !b.intercept.is_finite() {
                return Err(Error::domain("branch slope must be finite and nonzero"));
            }
        }
        Ok(PiecewiseLinearMap { branches, circle })
    }

    /// `x ↦ 2x mod 1` on the circle.
    pub fn doubling() -> Self {
        PiecewiseLinearMap::new(
            vec![
                Branch {
                    lo: 0.0,
                    hi: 0.5,
                    hi_closed: false,
                    slope: 2.0,
                    intercept: 0.0,
                },
                Branch {
                    lo: 0.5,
                    hi: 1.0,
                    hi_closed: false,
                    slope: 2.0,
                    intercept: -1.0,
                },
            ],
            true,
        )
        .expect("valid branches")
    }

    /// `x ↦ 4x mod 1` on the circle.
    pub fn quadrupling() -> Self {
        let branches = (0..4)
            .map(|i| Branch {
                lo: i as f64 / 4.0,
                hi: (i + 1) as f64 / 4.0,
                hi_closed: false,
                slope: 4.0,
                intercept: -(i as f64),
            })
            .collect();
        PiecewiseLinearMap::new(branches, true).expect("valid branches")
    }

    /// The full tent map on `[0, 1]`.
    pub fn tent() -> Self {
        PiecewiseLinearMap::new(
            vec![
                Branch {
                    lo: 0.0,
                    hi: 0.5,
                    hi_closed: true,
                    slope: 2.0,
                    intercept: 0.0,
                },
                Branch {
                    lo: 0.5,
                    hi: 1.0,
                    hi_closed: true,
                    slope: -2.0,
                    intercept: 2.0,
                },
            ],
            false,
        )
        .expect("valid branches")
    }

    /// `x ↦ x/2` on `[0, 1]`; not surjective, so some preimage sets are empty.
    pub fn contraction_half() -> Self {
        PiecewiseLinearMap::new(
            vec![Branch {
                lo: 0.0,
                hi: 1.0,
                hi_closed: true,
                slope: 0.5,
                intercept: 0.0,
            }],
            false,
        )
        .expect("valid branch")
    }

    pub fn is_circle(&self) -> bool {
        self.circle
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn contains(&self, x: f64) -> bool {
        if self.circle {
            (0.0..1.0).contains(&x)
        } else {
            (0.0..=1.0).contains(&x)
        }
    }

    fn normalize(&self, y: f64) -> f64 {
        if self.circle {
            let r = y.rem_euclid(1.0);
            if r >= 1.0 {
                0.0
            } else {
                r + 0.0
            }
        } else {
            y.clamp(0.0, 1.0) + 0.0
        }
    }

    pub fn step(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::domain(format!("{x} is outside the phase space")));
        }
        let b = self
            .branches
            .iter()
            .find(|b| b.in_domain(x))
            .ok_or_else(|| Error::domain(format!("no branch covers {x}")))?;
        Ok(self.normalize(b.apply(x)))
    }

    /// One level of branch inversion; a point on a shared endpoint is kept once.
    pub fn preimages_once(&self, y: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for b in &self.branches {
            let x = (y - b.intercept) / b.slope;
            let x = x + 0.0;
            if !b.in_domain(x) {
                continue;
            }
            // the branch that owns x under forward evaluation must be this one
            let owner = self.branches.iter().find(|c| c.in_domain(x));
            if owner != Some(b) {
                continue;
            }
            if !out.iter().any(|&o| o.to_bits() == x.to_bits()) {
                out.push(x);
            }
        }
        out
    }

    pub fn distance(&self, x: f64, y: f64) -> f64 {
        let d = (x - y).abs();
        if self.circle {
            d.min(1.0 - d)
        } else {
            d
        }
    }

    pub fn endpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .branches
            .iter()
            .flat_map(|b| [b.lo, b.hi])
            .map(|x| self.normalize(x))
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| a.to_bits() == b.to_bits());
        pts
    }

    /// Upper bound on the expansion factor, `max |slope|`.
    pub fn lipschitz(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.slope.abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling_step_and_preimages() {
        let d = PiecewiseLinearMap::doubling();
        assert!((d.step(0.3).unwrap() - 0.6).abs() < 1e-15);
        assert_eq!(d.step(0.75).unwrap(), 0.5);
        let pre = d.preimages_once(0.6);
        assert_eq!(pre.len(), 2);
        for x in pre {
            assert!((d.step(x).unwrap() - 0.6).abs() < 1e-15);
        }
    }

    #[test]
    fn tent_shared_endpoint_deduplicated() {
        let t = PiecewiseLinearMap::tent();
        assert_eq!(t.preimages_once(1.0), vec![0.5]);
        assert_eq!(t.preimages_once(0.5).len(), 2);
    }

    #[test]
    fn contraction_preimage_can_be_empty() {
        let c = PiecewiseLinearMap::contraction_half();
        assert_eq!(c.preimages_once(0.25), vec![0.5]);
        assert!(c.preimages_once(0.75).is_empty());
    }

    #[test]
    fn circle_distance_wraps() {
        let d = PiecewiseLinearMap::doubling();
        assert!((d.distance(0.05, 0.95) - 0.1).abs() < 1e-15);
        assert!(d.step(1.0).is_err());
    }
}
