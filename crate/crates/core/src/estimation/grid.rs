use serde::{Deserialize, Serialize};

use crate::combinatorics::SolverConfig;
use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::systems::Point;

/// Which preimage depths `k ≥ n` are tried for window length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KPolicy {
    /// `{n, n + c, n + c + 1}` with `c = ceil(log2(1/ε))`.
    Saturate,
    /// `{n, 2n}`
    Double,
    /// Explicit depths; those below `n` are ignored.
    List(Vec<usize>),
}

impl KPolicy {
    pub fn depths(&self, n: usize, eps: Dyadic) -> Vec<usize> {
        let mut ks = match self {
            KPolicy::Saturate => {
                let c = eps.ceil_log2_inverse();
                vec![n, n + c, n + c + 1]
            }
            KPolicy::Double => vec![n, 2 * n],
            KPolicy::List(ks) => ks.iter().copied().filter(|&k| k >= n).collect(),
        };
        ks.sort_unstable();
        ks.dedup();
        ks
    }
}

/// Points `x` over which the supremum is sampled.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum SampleSpec {
    /// All points of a finite map; one admissible point per leading symbol
    /// of a shift; the grid i/8 plus branch endpoints of an interval map.
    #[default]
    Default,
    Explicit(Vec<Point>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationGrid {
    pub ns: Vec<usize>,
    pub eps: Vec<Dyadic>,
    pub k_policy: KPolicy,
    pub samples: SampleSpec,
    pub s_values: Vec<f64>,
    /// Cells whose candidate set would exceed this size are skipped.
    pub max_candidates: usize,
    pub solver: SolverConfig,
    /// Also compute spanning counts for the spanning-based proxy.
    pub spanning_proxy: bool,
    /// Band for the finite-scale classification of `s`.
    pub tau: f64,
    pub threads: Option<usize>,
}

pub const DEFAULT_MAX_CANDIDATES: usize = 1 << 17;
pub const DEFAULT_TAU: f64 = 0.15;

impl EstimationGrid {
    pub fn new(ns: Vec<usize>, eps: Vec<Dyadic>) -> Self {
        EstimationGrid {
            ns,
            eps,
            k_policy: KPolicy::Saturate,
            samples: SampleSpec::Default,
            s_values: vec![0.5, 1.0, 2.0],
            max_candidates: DEFAULT_MAX_CANDIDATES,
            solver: SolverConfig::default(),
            spanning_proxy: true,
            tau: DEFAULT_TAU,
            threads: None,
        }
    }

    pub fn with_k_policy(mut self, k: KPolicy) -> Self {
        self.k_policy = k;
        self
    }

    pub fn with_s_values(mut self, s: Vec<f64>) -> Self {
        self.s_values = s;
        self
    }

    pub fn with_samples(mut self, samples: Vec<Point>) -> Self {
        self.samples = SampleSpec::Explicit(samples);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() {
            return Err(Error::config("n list is empty"));
        }
        if self.ns[0] == 0 {
            return Err(Error::config("window lengths must be at least 1"));
        }
        if self.ns.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("n list must be strictly increasing"));
        }
        if self.eps.is_empty() {
            return Err(Error::config("ε list is empty"));
        }
        if self.eps.windows(2).any(|w| w[0].value() <= w[1].value()) {
            return Err(Error::config("ε list must be strictly decreasing"));
        }
        if self.s_values.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::config("s values must be positive"));
        }
        if self.max_candidates == 0 || self.solver.budget == 0 {
            return Err(Error::config("budgets must be positive"));
        }
        if !(self.tau >= 0.0) {
            return Err(Error::config("tolerance τ must be nonnegative"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturate_depths() {
        let half: Dyadic = "1/2".parse().unwrap();
        assert_eq!(KPolicy::Saturate.depths(4, half), vec![4, 5, 6]);
        assert_eq!(KPolicy::Saturate.depths(1, half), vec![1, 2, 3]);
        assert_eq!(KPolicy::List(vec![2, 6, 9]).depths(5, half), vec![6, 9]);
    }

    #[test]
    fn validation() {
        let e = |s: &str| s.parse::<Dyadic>().unwrap();
        assert!(EstimationGrid::new(vec![2, 3], vec![e("1/2"), e("1/4")])
            .validate()
            .is_ok());
        assert!(EstimationGrid::new(vec![3, 2], vec![e("1/2")])
            .validate()
            .is_err());
        assert!(EstimationGrid::new(vec![2], vec![e("1/4"), e("1/2")])
            .validate()
            .is_err());
        assert!(EstimationGrid::new(vec![], vec![e("1/2")])
            .validate()
            .is_err());
    }
}
