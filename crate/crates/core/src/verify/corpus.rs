use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::eps::Dyadic;
use crate::error::{Error, Result};
use crate::systems::{resolve, Point, SystemModel};

pub const CORPUS_VERSION: u32 = 1;

/// The fixed set of systems and `(n, k, ε)` cells the exact relations are
/// checked on. Systems are given as expressions understood by
/// [`resolve`](crate::systems::resolve).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub version: u32,
    pub systems: Vec<String>,
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub eps: Vec<Dyadic>,
    /// At most this many default sample points per system.
    pub samples_per_system: usize,
}

impl Default for Corpus {
    fn default() -> Self {
        Corpus {
            version: CORPUS_VERSION,
            systems: [
                "identity8",
                "rotation-finite",
                "contraction-half",
                "shift:2",
                "shift:3",
                "golden-mean",
                "doubling",
                "tent",
                "golden-mean*identity8",
                "shift:2*point",
            ]
            .map(String::from)
            .to_vec(),
            ns: vec![1, 2, 3, 4],
            ks: vec![0, 1, 2, 3, 4],
            eps: vec![
                Dyadic::inverse_power_of_two(1),
                Dyadic::inverse_power_of_two(2),
            ],
            samples_per_system: 2,
        }
    }
}

/// One corpus cell: the candidate set `T^{-k}(x)` at window `n` and scale ε.
#[derive(Debug, Clone)]
pub struct Cell {
    pub system: String,
    pub x: Point,
    pub n: usize,
    pub k: usize,
    pub eps: Dyadic,
}

impl Corpus {
    pub fn load(path: &Path) -> Result<Self> {
        let corpus: Corpus = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if corpus.version != CORPUS_VERSION {
            return Err(Error::config(format!(
                "corpus version {} is not supported (expected {CORPUS_VERSION})",
                corpus.version
            )));
        }
        Ok(corpus)
    }

    pub fn models(&self) -> Result<Vec<(String, SystemModel)>> {
        self.systems
            .iter()
            .map(|s| Ok((s.clone(), resolve(s)?)))
            .collect()
    }

    pub fn samples(&self, sys: &SystemModel) -> Vec<Point> {
        let mut pts = sys.default_samples();
        pts.truncate(self.samples_per_system);
        pts
    }

    /// Every `(x, n, k, ε)` for one system, in a fixed order.
    pub fn cells_for(&self, id: &str, sys: &SystemModel) -> Vec<Cell> {
        let mut out = Vec::new();
        for x in self.samples(sys) {
            for &n in &self.ns {
                for &k in &self.ks {
                    for &eps in &self.eps {
                        out.push(Cell {
                            system: id.to_string(),
                            x: x.clone(),
                            n,
                            k,
                            eps,
                        });
                    }
                }
            }
        }
        out
    }
}
