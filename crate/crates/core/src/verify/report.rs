use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eps::Dyadic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A count needed by the assertion was only bounded, not exact.
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Where an assertion was checked, with the quantities it compared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub system: String,
    pub x: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub eps: Option<Dyadic>,
    pub values: Vec<(String, f64)>,
}

impl Witness {
    pub fn at(system: &str) -> Self {
        Witness {
            system: system.to_string(),
            x: None,
            n: None,
            k: None,
            eps: None,
            values: Vec::new(),
        }
    }

    pub fn cell(system: &str, x: &str, n: usize, k: usize, eps: Dyadic) -> Self {
        Witness {
            system: system.to_string(),
            x: Some(x.to_string()),
            n: Some(n),
            k: Some(k),
            eps: Some(eps),
            values: Vec::new(),
        }
    }

    pub fn value(mut self, name: &str, v: impl Into<f64>) -> Self {
        self.values.push((name.to_string(), v.into()));
        self
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.system)?;
        if let Some(x) = &self.x {
            write!(f, " x={x}")?;
        }
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(e) = self.eps {
            write!(f, " eps={e}")?;
        }
        for (name, v) in &self.values {
            write!(f, " {name}={v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub relation: String,
    pub status: Status,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub corpus_version: u32,
    pub assertions: Vec<Assertion>,
}

impl VerificationReport {
    pub fn new(suite: &str, corpus_version: u32) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            corpus_version,
            assertions: Vec::new(),
        }
    }

    pub fn record(&mut self, relation: &str, status: Status, witness: Witness) {
        self.assertions.push(Assertion {
            relation: relation.to_string(),
            status,
            witness,
        });
    }

    /// Records `Pass` when `holds`, else `Fail`.
    pub fn check(&mut self, relation: &str, holds: bool, witness: Witness) {
        let status = if holds { Status::Pass } else { Status::Fail };
        self.record(relation, status, witness);
    }

    pub fn instances(&self) -> usize {
        self.assertions.len()
    }

    pub fn count(&self, status: Status) -> usize {
        self.assertions
            .iter()
            .filter(|a| a.status == status)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| a.status != Status::Pass)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.assertions.extend(other.assertions);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} instances, {} pass, {} fail, {} inconclusive",
            self.suite,
            self.instances(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        )?;
        for a in self.failures() {
            writeln!(f, "  {} {}: {}", a.status, a.relation, a.witness)?;
        }
        Ok(())
    }
}
