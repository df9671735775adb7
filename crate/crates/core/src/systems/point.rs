use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An eventually periodic one-sided sequence `prefix · period^∞`.
///
/// Always kept in canonical form (minimal period, shortest prefix) so that
/// structural equality is equality of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolicPoint {
    prefix: Vec<u8>,
    period: Vec<u8>,
}

impl SymbolicPoint {
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::domain(
                "symbolic point needs a tail period of length >= 1",
            ));
        }
        let mut p = SymbolicPoint { prefix, period };
        p.canonicalize();
        Ok(p)
    }

    /// Constant sequence `a a a ...`.
    pub fn constant(a: u8) -> Self {
        SymbolicPoint {
            prefix: Vec::new(),
            period: vec![a],
        }
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn symbol(&self, i: usize) -> u8 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn first(&self) -> u8 {
        self.symbol(0)
    }

    pub fn max_symbol(&self) -> u8 {
        self.prefix
            .iter()
            .chain(self.period.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// The left shift `(x_0, x_1, ...) -> (x_1, x_2, ...)`.
    pub fn shifted(&self) -> Self {
        let mut out = self.clone();
        if out.prefix.is_empty() {
            out.period.rotate_left(1);
        } else {
            out.prefix.remove(0);
        }
        out
    }

    /// `word · self`
    pub fn prepend(&self, word: &[u8]) -> Self {
        let mut prefix = Vec::with_capacity(word.len() + self.prefix.len());
        prefix.extend_from_slice(word);
        prefix.extend_from_slice(&self.prefix);
        let mut p = SymbolicPoint {
            prefix,
            period: self.period.clone(),
        };
        p.trim_prefix();
        p
    }

    pub fn map_symbols(&self, f: impl Fn(u8) -> u8) -> Self {
        let mut p = SymbolicPoint {
            prefix: self.prefix.iter().map(|&a| f(a)).collect(),
            period: self.period.iter().map(|&a| f(a)).collect(),
        };
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        let len = self.period.len();
        for d in 1..=len {
            if len % d == 0 && (d..len).all(|i| self.period[i] == self.period[i - d]) {
                self.period.truncate(d);
                break;
            }
        }
        self.trim_prefix();
    }

    fn trim_prefix(&mut self) {
        while let (Some(&a), Some(&b)) = (self.prefix.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.prefix.pop();
            self.period.rotate_right(1);
        }
    }
}

impl fmt::Display for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.prefix {
            write!(f, "{a}")?;
        }
        write!(f, "(")?;
        for a in &self.period {
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// A point of one of the supported phase spaces.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Point {
    Finite {
        index: usize,
    },
    Symbolic(SymbolicPoint),
    Real {
        x: f64,
    },
    Pair {
        first: Box<Point>,
        second: Box<Point>,
    },
}

impl Point {
    pub fn finite(index: usize) -> Self {
        Point::Finite { index }
    }

    pub fn real(x: f64) -> Self {
        Point::Real { x }
    }

    pub fn symbolic(prefix: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        SymbolicPoint::new(prefix, period).map(Point::Symbolic)
    }

    pub fn pair(first: Point, second: Point) -> Self {
        Point::Pair {
            first: Box::new(first),
            second: Box::new(second),
        }
    }

    pub fn as_pair(&self) -> Option<(&Point, &Point)> {
        match self {
            Point::Pair { first, second } => Some((first, second)),
            _ => None,
        }
    }
}

// Real coordinates compare by bit pattern; -0.0 never arises because the
// constructors normalise into [0, 1].
impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Point::Finite { index: a }, Point::Finite { index: b }) => a == b,
            (Point::Symbolic(a), Point::Symbolic(b)) => a == b,
            (Point::Real { x: a }, Point::Real { x: b }) => a.to_bits() == b.to_bits(),
            (
                Point::Pair {
                    first: a1,
                    second: a2,
                },
                Point::Pair {
                    first: b1,
                    second: b2,
                },
            ) => a1 == b1 && a2 == b2,
            _ => false,
        }
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Point::Finite { index } => {
                0u8.hash(state);
                index.hash(state);
            }
            Point::Symbolic(s) => {
                1u8.hash(state);
                s.hash(state);
            }
            Point::Real { x } => {
                2u8.hash(state);
                x.to_bits().hash(state);
            }
            Point::Pair { first, second } => {
                3u8.hash(state);
                first.hash(state);
                second.hash(state);
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite { index } => write!(f, "#{index}"),
            Point::Symbolic(s) => write!(f, "{s}"),
            Point::Real { x } => write!(f, "{x}"),
            Point::Pair { first, second } => write!(f, "<{first},{second}>"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_unique() {
        let a = SymbolicPoint::new(vec![0, 1, 0, 1], vec![0, 1, 0, 1]).unwrap();
        let b = SymbolicPoint::new(vec![], vec![0, 1]).unwrap();
        assert_eq!(a, b);
        let c = SymbolicPoint::new(vec![1, 0, 0], vec![0]).unwrap();
        assert_eq!(c.prefix(), &[1]);
        assert_eq!(c.period(), &[0]);
    }

    #[test]
    fn shift_drops_first_symbol() {
        let x = SymbolicPoint::new(vec![0, 1, 1], vec![0]).unwrap();
        let y = x.shifted();
        assert_eq!(y, SymbolicPoint::new(vec![1, 1], vec![0]).unwrap());
        let p = SymbolicPoint::new(vec![], vec![0, 1]).unwrap();
        assert_eq!(p.shifted(), SymbolicPoint::new(vec![], vec![1, 0]).unwrap());
    }

    #[test]
    fn empty_period_rejected() {
        assert!(SymbolicPoint::new(vec![0], vec![]).is_err());
    }

    #[test]
    fn prepend_keeps_canonical_form() {
        let x = SymbolicPoint::constant(0);
        let y = x.prepend(&[1, 0, 0]);
        assert_eq!(y, SymbolicPoint::new(vec![1], vec![0]).unwrap());
        assert_eq!(y.symbol(0), 1);
        assert_eq!(y.symbol(7), 0);
    }
}
