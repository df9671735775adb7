//! One-sided subshifts of finite type with the metric
//! `ρ(x, y) = Σ_{i≥0} [x_i ≠ y_i] / 2^i`.

use num::bigint::BigInt;
use num::integer::lcm;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::point::SymbolicPoint;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSft {
    transitions: Vec<Vec<u8>>,
}

impl ShiftSft {
    pub fn new(transitions: Vec<Vec<u8>>) -> Result<Self> {
        let m = transitions.len();
        if m == 0 || m > 255 {
            return Err(Error::domain("alphabet size must be in 1..=255"));
        }
        for (i, row) in transitions.iter().enumerate() {
            if row.len() != m {
                return Err(Error::domain(format!(
                    "transition row {i} has wrong length"
                )));
            }
            if row.iter().any(|&a| a > 1) {
                return Err(Error::domain("transition matrix must be 0/1"));
            }
            if row.iter().all(|&a| a == 0) {
                return Err(Error::domain(format!("symbol {i} has no successor")));
            }
        }
        Ok(ShiftSft { transitions })
    }

    pub fn full(m: usize) -> Result<Self> {
        ShiftSft::new(vec![vec![1; m]; m])
    }

    pub fn golden_mean() -> Self {
        ShiftSft::new(vec![vec![1, 1], vec![1, 0]]).expect("valid matrix")
    }

    pub fn alphabet(&self) -> usize {
        self.transitions.len()
    }

    pub fn transitions(&self) -> &[Vec<u8>] {
        &self.transitions
    }

    pub fn allowed(&self, a: u8, b: u8) -> bool {
        self.transitions[a as usize][b as usize] == 1
    }

    /// Entrywise `self ≤ other`, i.e. every sequence admissible here is
    /// admissible in `other`.
    pub fn is_subshift_of(&self, other: &ShiftSft) -> bool {
        self.alphabet() == other.alphabet()
            && self
                .transitions
                .iter()
                .flatten()
                .zip(other.transitions.iter().flatten())
                .all(|(a, b)| a <= b)
    }

    pub fn contains(&self, x: &SymbolicPoint) -> bool {
        let m = self.alphabet() as u8;
        if x.max_symbol() >= m {
            return false;
        }
        let seq: Vec<u8> = x
            .prefix()
            .iter()
            .chain(x.period().iter())
            .copied()
            .chain(std::iter::once(x.period()[0]))
            .collect();
        seq.windows(2).all(|w| self.allowed(w[0], w[1]))
    }

    pub fn check(&self, x: &SymbolicPoint) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::domain(format!("{x} is not an admissible sequence")))
        }
    }

    /// All `w · x` with `|w| = k` admissible, in a fixed deterministic order.
    pub fn preimages(&self, x: &SymbolicPoint, k: usize) -> Vec<SymbolicPoint> {
        let mut out = Vec::new();
        let mut word = vec![0u8; k];
        self.fill_backwards(x, &mut word, k, x.first(), &mut out);
        out
    }

    fn fill_backwards(
        &self,
        x: &SymbolicPoint,
        word: &mut Vec<u8>,
        remaining: usize,
        next: u8,
        out: &mut Vec<SymbolicPoint>,
    ) {
        if remaining == 0 {
            out.push(x.prepend(word));
            return;
        }
        for a in 0..self.alphabet() as u8 {
            if self.allowed(a, next) {
                word[remaining - 1] = a;
                self.fill_backwards(x, word, remaining - 1, a, out);
            }
        }
    }

    /// An admissible eventually periodic sequence starting with `a`: the
    /// shortest path from `a` into a cycle, found by breadth-first search.
    pub fn point_starting_with(&self, a: u8) -> Option<SymbolicPoint> {
        let m = self.alphabet();
        if a as usize >= m {
            return None;
        }
        // walk the lowest-index successor until a symbol repeats
        let mut seq = vec![a];
        loop {
            let last = *seq.last().unwrap();
            let next = (0..m as u8).find(|&b| self.allowed(last, b))?;
            if let Some(pos) = seq.iter().position(|&s| s == next) {
                let period = seq[pos..].to_vec();
                let prefix = seq[..pos].to_vec();
                return SymbolicPoint::new(prefix, period).ok();
            }
            seq.push(next);
        }
    }

    /// The admissible words of length `len`, lexicographically ordered.
    pub fn words(&self, len: usize) -> Vec<Vec<u8>> {
        let mut out: Vec<Vec<u8>> = (0..self.alphabet() as u8).map(|a| vec![a]).collect();
        if len == 0 {
            return vec![Vec::new()];
        }
        for _ in 1..len {
            let mut next = Vec::new();
            for w in &out {
                let last = *w.last().unwrap();
                for b in 0..self.alphabet() as u8 {
                    if self.allowed(last, b) {
                        let mut v = w.clone();
                        v.push(b);
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }
}

fn diff_at(x: &SymbolicPoint, y: &SymbolicPoint, i: usize) -> bool {
    x.symbol(i) != y.symbol(i)
}

/// `ρ(x, y)` as an exact rational number.
///
/// Past `L = max prefix length` both sequences are periodic with common
/// period `P = lcm` of the two periods, so the tail is a geometric series:
/// `ρ = Σ_{i<L} δ_i 2^-i + 2^-L · (Σ_{j<P} δ_{L+j} 2^-j) / (1 - 2^-P)`.
pub fn rho_exact(x: &SymbolicPoint, y: &SymbolicPoint) -> BigRational {
    let l = x.prefix().len().max(y.prefix().len());
    let p = lcm(x.period().len(), y.period().len());
    let two = BigInt::from(2);
    let mut head = BigInt::zero();
    for i in 0..l {
        head *= &two;
        if diff_at(x, y, i) {
            head += 1;
        }
    }
    let mut tail = BigInt::zero();
    for j in 0..p {
        tail *= &two;
        if diff_at(x, y, l + j) {
            tail += 1;
        }
    }
    // head / 2^(l-1) + 2 tail / (2^l (2^p - 1))
    let pow_l = num::pow(two.clone(), l);
    let pow_p_minus_1 = num::pow(two.clone(), p) - BigInt::one();
    let head_part = BigRational::new(head * &two, pow_l.clone());
    let tail_part = BigRational::new(tail * &two, pow_l * pow_p_minus_1);
    head_part + tail_part
}

/// `ρ(x, y)` in binary64.
///
/// When the two sequences agree from `L` on (the usual case for points of
/// one preimage set) the value is a dyadic rational and is summed exactly.
pub fn rho(x: &SymbolicPoint, y: &SymbolicPoint) -> f64 {
    let l = x.prefix().len().max(y.prefix().len());
    let p = lcm(x.period().len(), y.period().len());
    if (l..l + p).any(|i| diff_at(x, y, i)) {
        return rho_exact(x, y).to_f64().unwrap_or(f64::INFINITY);
    }
    let mut acc = 0.0f64;
    // summing from the smallest term keeps partial sums exact
    for i in (0..l).rev() {
        if diff_at(x, y, i) {
            acc += 0.5f64.powi(i as i32);
        }
    }
    acc
}

/// `max_{j<n} ρ(σ^{j·stride} x, σ^{j·stride} y)` without materialising
/// the shifted points when the two tails agree.
pub fn bowen_rho(x: &SymbolicPoint, y: &SymbolicPoint, n: usize, stride: usize) -> f64 {
    let l = x.prefix().len().max(y.prefix().len());
    let p = lcm(x.period().len(), y.period().len());
    if (l..l + p).any(|i| diff_at(x, y, i)) {
        let (mut a, mut b) = (x.clone(), y.clone());
        let mut best = rho(&a, &b);
        for _ in 1..n {
            for _ in 0..stride {
                a = a.shifted();
                b = b.shifted();
            }
            best = best.max(rho(&a, &b));
        }
        return best;
    }
    // Horner from the right: S(t) = δ_t + S(t + 1) / 2 and S(l) = 0
    let mut best = 0.0f64;
    let mut acc = 0.0f64;
    for t in (0..l).rev() {
        acc = acc / 2.0 + if diff_at(x, y, t) { 1.0 } else { 0.0 };
        if t % stride == 0 && t / stride < n {
            best = best.max(acc);
        }
    }
    best
}

/// First-disagreement metric `2^-min{i : x_i ≠ y_i}`, an alternative
/// compatible metric on the same sequence space.
pub fn first_disagreement(x: &SymbolicPoint, y: &SymbolicPoint) -> f64 {
    let l = x.prefix().len().max(y.prefix().len());
    let p = lcm(x.period().len(), y.period().len());
    (0..l + p)
        .find(|&i| diff_at(x, y, i))
        .map_or(0.0, |i| 0.5f64.powi(i as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(prefix: &[u8], period: &[u8]) -> SymbolicPoint {
        SymbolicPoint::new(prefix.to_vec(), period.to_vec()).unwrap()
    }

    // truncated series, independent of the closed form
    fn rho_truncated(x: &SymbolicPoint, y: &SymbolicPoint, terms: usize) -> f64 {
        (0..terms)
            .filter(|&i| x.symbol(i) != y.symbol(i))
            .map(|i| 0.5f64.powi(i as i32))
            .sum()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&sp(&[], &[0]), &sp(&[1], &[0])), 1.0);
        assert_eq!(rho(&sp(&[], &[0, 1]), &sp(&[], &[0, 1])), 0.0);
        // (0, 0, 0, ...) vs (1, 1, 1, ...): every index differs
        let x = sp(&[], &[0]);
        let y = sp(&[], &[1]);
        assert!((rho_truncated(&x, &y, 60) - 2.0).abs() < 1e-15);
        assert_eq!(rho(&x, &y), 2.0);
        assert_eq!(rho_exact(&x, &y), BigRational::from_integer(2.into()));
    }

    #[test]
    fn rho_closed_form_matches_truncation_on_mixed_periods() {
        let pts = [
            sp(&[1, 0], &[0, 1, 1]),
            sp(&[], &[0, 1]),
            sp(&[1, 1, 1], &[0]),
            sp(&[0], &[1, 0, 0, 1, 0]),
        ];
        for a in &pts {
            for b in &pts {
                let exact = rho(a, b);
                assert!((exact - rho_truncated(a, b, 80)).abs() < 1e-14, "{a} {b}");
            }
        }
    }

    #[test]
    fn golden_mean_preimage_count() {
        let g = ShiftSft::golden_mean();
        // admissible 5-words followed by 0: every 5-word without "11"
        assert_eq!(g.preimages(&sp(&[], &[0]), 5).len(), 13);
        assert!(!g.contains(&sp(&[1, 1], &[0])));
        assert!(ShiftSft::new(vec![vec![1, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn point_starting_with_is_admissible() {
        let g = ShiftSft::golden_mean();
        let p = g.point_starting_with(1).unwrap();
        assert_eq!(p.first(), 1);
        assert!(g.contains(&p));
    }
}
