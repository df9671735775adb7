use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A self-map of `{0, ..., N-1}` with an explicit distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMap {
    table: Vec<usize>,
    distances: Vec<Vec<f64>>,
}

impl FiniteMap {
    pub fn new(table: Vec<usize>, distances: Vec<Vec<f64>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::domain("finite space must be nonempty"));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= n) {
            return Err(Error::domain(format!("map table entry {bad} out of range")));
        }
        if distances.len() != n || distances.iter().any(|r| r.len() != n) {
            return Err(Error::domain("distance matrix must be N x N"));
        }
        for i in 0..n {
            if distances[i][i] != 0.0 {
                return Err(Error::domain(format!(
                    "distance diagonal at {i} is nonzero"
                )));
            }
            for j in 0..n {
                let d = distances[i][j];
                if !(d >= 0.0) || !d.is_finite() {
                    return Err(Error::domain(format!(
                        "distance ({i},{j}) is not a nonnegative number"
                    )));
                }
                if i != j && d == 0.0 {
                    return Err(Error::domain(format!(
                        "distinct points {i},{j} at distance 0"
                    )));
                }
                if d != distances[j][i] {
                    return Err(Error::domain(format!(
                        "distance matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let bound = distances[i][k] + distances[k][j];
                    if distances[i][j] > bound * (1.0 + 1e-12) {
                        return Err(Error::domain(format!(
                            "triangle inequality fails for ({i},{k},{j})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMap { table, distances })
    }

    /// Points `i / N` on the circle with arc-length distance.
    pub fn circle_metric(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = i.abs_diff(j);
                        d.min(n - d) as f64 / n as f64
                    })
                    .collect()
            })
            .collect()
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap::new((0..n).collect(), Self::circle_metric(n)).expect("valid finite map")
    }

    /// Rotation by one step on `n` equally spaced circle points.
    pub fn rotation(n: usize) -> Self {
        FiniteMap::new(
            (0..n).map(|i| (i + 1) % n).collect(),
            Self::circle_metric(n),
        )
        .expect("valid finite map")
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        &self.distances
    }

    pub fn image(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.distances[i][j]
    }

    pub fn preimages_once(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.table[j] == i).collect()
    }
}
