#![allow(dead_code)]

use ped::combinatorics::OrbitDistanceMatrix;
use ped::systems::{Point, SymbolicPoint};
use ped::Dyadic;

/// Largest subset with every pair at distance `> ε`, by trying all subsets.
pub fn brute_separated(d: &OrbitDistanceMatrix, eps: Dyadic) -> usize {
    let n = d.len();
    assert!(n <= 20);
    let e = eps.value();
    let mut best = 0;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let ok = (0..n).all(|i| {
            mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || d.get(i, j) > e)
        });
        if ok {
            best = size;
        }
    }
    best
}

/// Smallest subset reaching every point within `≤ ε`, by trying all subsets.
pub fn brute_spanning(d: &OrbitDistanceMatrix, eps: Dyadic) -> usize {
    let n = d.len();
    assert!(n <= 20);
    let e = eps.value();
    let mut best = n;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        if (0..n).all(|v| (0..n).any(|u| mask >> u & 1 == 1 && d.get(u, v) <= e)) {
            best = size;
        }
    }
    best
}

fn symbols(p: &SymbolicPoint, len: usize) -> Vec<u8> {
    (0..len).map(|i| p.symbol(i)).collect()
}

/// `max_{j<n} Σ_{i<64} [x_{sj+i} ≠ y_{sj+i}] 2^-i` on materialised sequences.
pub fn naive_bowen_symbolic(x: &SymbolicPoint, y: &SymbolicPoint, n: usize, stride: usize) -> f64 {
    let len = stride * n + 64;
    let (a, b) = (symbols(x, len), symbols(y, len));
    (0..n)
        .map(|j| {
            (0..64)
                .filter(|&i| a[stride * j + i] != b[stride * j + i])
                .map(|i| 0.5f64.powi(i as i32))
                .sum::<f64>()
        })
        .fold(0.0, f64::max)
}

pub fn symbolic(p: &Point) -> &SymbolicPoint {
    match p {
        Point::Symbolic(s) => s,
        other => panic!("not symbolic: {other}"),
    }
}

/// Number of words `w` of length `k` with `w x` admissible, by dynamic
/// programming over the transition matrix.
pub fn transfer_preimage_count(transitions: &[Vec<u8>], first: u8, k: usize) -> u64 {
    let m = transitions.len();
    // ways[a] = admissible words of the current length starting with a
    let mut ways: Vec<u64> = (0..m)
        .map(|a| u64::from(transitions[a][first as usize] == 1))
        .collect();
    for _ in 1..k {
        ways = (0..m)
            .map(|a| {
                (0..m)
                    .filter(|&b| transitions[a][b] == 1)
                    .map(|b| ways[b])
                    .sum()
            })
            .collect();
    }
    if k == 0 {
        1
    } else {
        ways.iter().sum()
    }
}

/// Logarithm of the spectral radius of a 0-1 matrix by power iteration.
pub fn log_spectral_radius(transitions: &[Vec<u8>]) -> f64 {
    let m = transitions.len();
    let mut v = vec![1.0f64; m];
    let mut lambda = 0.0;
    for _ in 0..500 {
        let w: Vec<f64> = (0..m)
            .map(|a| (0..m).map(|b| f64::from(transitions[a][b]) * v[b]).sum())
            .collect();
        lambda = w.iter().cloned().fold(0.0, f64::max);
        v = w.iter().map(|x| x / lambda).collect();
    }
    lambda.ln()
}

pub fn eps(s: &str) -> Dyadic {
    s.parse().unwrap()
}
