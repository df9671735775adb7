use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::systems::{Point, SystemModel};

/// Pairwise Bowen distances `M[i][j] = d_{T,n}(K[i], K[j])` over an ordered
/// candidate list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDistanceMatrix {
    points: Vec<Point>,
    n: usize,
    entries: Vec<f64>,
}

impl OrbitDistanceMatrix {
    pub fn build(sys: &SystemModel, points: Vec<Point>, n: usize) -> Result<Self> {
        Self::build_with(points, n, |x, y| sys.bowen_distance(x, y, n))
    }

    pub fn build_with<F>(points: Vec<Point>, n: usize, mut dist: F) -> Result<Self>
    where
        F: FnMut(&Point, &Point) -> Result<f64>,
    {
        if n == 0 {
            return Err(Error::domain("window length n must be at least 1"));
        }
        let len = points.len();
        let mut entries = vec![0.0; len * len];
        for i in 0..len {
            for j in i + 1..len {
                let d = dist(&points[i], &points[j])?;
                entries[i * len + j] = d;
                entries[j * len + i] = d;
            }
        }
        Ok(OrbitDistanceMatrix { points, n, entries })
    }

    /// A matrix given directly by its entries, for tests and external data.
    pub fn from_entries(n: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        let len = rows.len();
        if rows.iter().any(|r| r.len() != len) {
            return Err(Error::domain("distance matrix must be square"));
        }
        for i in 0..len {
            if rows[i][i] != 0.0 {
                return Err(Error::domain("distance matrix diagonal must be zero"));
            }
            for j in 0..len {
                if rows[i][j] != rows[j][i] || !(rows[i][j] >= 0.0) {
                    return Err(Error::domain(
                        "distance matrix must be symmetric and nonnegative",
                    ));
                }
            }
        }
        Ok(OrbitDistanceMatrix {
            points: (0..len).map(Point::finite).collect(),
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn window(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.len() + j]
    }
}
