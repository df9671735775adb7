mod common;

use common::*;
use ped::combinatorics::{
    count_candidates, exact_dominating_set, exact_independent_set, greedy_dominating_set,
    greedy_independent_set, max_separated, min_spanning, separation_graph, OrbitDistanceMatrix,
    SolverConfig, Want,
};
use ped::estimation::{estimate, EstimationGrid};
use ped::systems::{resolve, Point, ShiftSft, SystemModel};
use proptest::prelude::*;

fn matrix(n: usize, upper: &[u8]) -> OrbitDistanceMatrix {
    // entries on a 1/8 grid so that ties with dyadic ε occur
    let mut rows = vec![vec![0.0; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = f64::from(*it.next().unwrap()) / 8.0;
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    OrbitDistanceMatrix::from_entries(1, rows).unwrap()
}

fn instance() -> impl Strategy<Value = (OrbitDistanceMatrix, u32)> {
    (1usize..=16).prop_flat_map(|n| {
        (prop::collection::vec(0u8..=16, n * (n - 1) / 2), 1u32..=3)
            .prop_map(move |(u, p)| (matrix(n, &u), p))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_counts_match_subset_enumeration((d, p) in instance()) {
        let e = ped::Dyadic::inverse_power_of_two(p);
        let cfg = SolverConfig::default();
        let r = max_separated(&d, e, &cfg).r_exact().unwrap() as usize;
        let s = min_spanning(&d, e, &cfg).s_exact().unwrap() as usize;
        prop_assert_eq!(r, brute_separated(&d, e));
        prop_assert_eq!(s, brute_spanning(&d, e));

        let g = separation_graph(&d, e);
        let mis = exact_independent_set(&g, None);
        prop_assert!(mis.complete);
        prop_assert_eq!(mis.best.len(), r);
        prop_assert!(g.is_independent(&mis.best));
        let greedy = greedy_independent_set(&g);
        prop_assert!(g.is_independent(&greedy));
        prop_assert!(greedy.len() <= r);

        let dom = exact_dominating_set(&g, None);
        prop_assert!(dom.complete);
        prop_assert_eq!(dom.best.len(), s);
        prop_assert!(g.is_dominating(&dom.best));
        let gd = greedy_dominating_set(&g);
        prop_assert!(g.is_dominating(&gd));
        prop_assert!(gd.len() >= s);
    }
}

#[test]
fn shift_bowen_distance_matches_materialised_sequences() {
    let sys = resolve("shift:2").unwrap();
    let x = Point::symbolic(vec![1, 0], vec![0, 1]).unwrap();
    let pre = sys.preimage_set(&x, 5).unwrap();
    for a in &pre {
        for b in &pre {
            for n in 1..=6 {
                let got = sys.bowen_distance(a, b, n).unwrap();
                let want = naive_bowen_symbolic(symbolic(a), symbolic(b), n, 1);
                assert!((got - want).abs() < 1e-12, "{a} {b} n={n}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn preimage_counts_match_transfer_matrix() {
    for (id, sft) in [
        ("shift:2", ShiftSft::full(2).unwrap()),
        ("shift:3", ShiftSft::full(3).unwrap()),
        ("golden-mean", ShiftSft::golden_mean()),
    ] {
        let sys = resolve(id).unwrap();
        for first in 0..sft.alphabet() as u8 {
            let Some(x) = sft.point_starting_with(first) else {
                continue;
            };
            let x = Point::Symbolic(x);
            for k in 0..=9 {
                let got = sys.preimage_set(&x, k).unwrap().len() as u64;
                assert_eq!(
                    got,
                    transfer_preimage_count(sft.transitions(), first, k),
                    "{id} x={x} k={k}"
                );
            }
        }
    }
}

#[test]
fn golden_mean_preimages_are_fibonacci() {
    let sys = resolve("golden-mean").unwrap();
    let zero = Point::symbolic(vec![], vec![0]).unwrap();
    let fib = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89];
    for (k, &f) in fib.iter().enumerate() {
        assert_eq!(sys.preimage_set(&zero, k).unwrap().len(), f);
    }
}

#[test]
fn preimage_set_counts_match_brute_force_on_small_sets() {
    // every preimage set here has at most 16 points
    let cfg = SolverConfig::default();
    for id in [
        "shift:2",
        "golden-mean",
        "shift:3",
        "identity8",
        "rotation-finite",
        "contraction-half",
        "doubling",
        "tent",
    ] {
        let sys = resolve(id).unwrap();
        for x in sys.default_samples() {
            for k in 0..=4 {
                let pre = sys.preimage_set(&x, k).unwrap();
                if pre.len() > 16 {
                    continue;
                }
                for n in 1..=4 {
                    let d = OrbitDistanceMatrix::build(&sys, pre.clone(), n).unwrap();
                    for e in ["1/2", "1/4", "1/8"] {
                        let e = eps(e);
                        let res = count_candidates(&sys, &pre, n, e, Want::Both, &cfg).unwrap();
                        assert_eq!(
                            res.r_exact(),
                            Some(brute_separated(&d, e) as u64),
                            "{id} {x} k={k} n={n}"
                        );
                        assert_eq!(
                            res.s_exact(),
                            Some(brute_spanning(&d, e) as u64),
                            "{id} {x} k={k} n={n}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn golden_mean_entropy_matches_spectral_radius() {
    let oracle = log_spectral_radius(ShiftSft::golden_mean().transitions());
    assert!((oracle - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
    let sys = SystemModel::golden_mean();
    let grid = EstimationGrid::new((4..=12).collect(), vec![eps("1/2"), eps("1/4")]);
    let est = estimate(&sys, "golden-mean", &grid).unwrap();
    for e in &est.entropy.per_eps {
        assert!(
            (e.value - oracle).abs() < 0.05,
            "eps {}: {}",
            e.eps,
            e.value
        );
    }
}

#[test]
fn forbidden_word_shift_matches_spectral_radius() {
    let t = vec![vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 0]];
    let oracle = log_spectral_radius(&t);
    let sys = SystemModel::Shift(ShiftSft::new(t).unwrap());
    let grid = EstimationGrid::new((3..=9).collect(), vec![eps("1/2")]);
    let est = estimate(&sys, "no-22", &grid).unwrap();
    assert!(
        (est.entropy.value - oracle).abs() < 0.05,
        "{} vs {oracle}",
        est.entropy.value
    );
}

#[test]
fn bounded_preimage_systems_have_zero_entropy() {
    let grid = EstimationGrid::new((1..=6).collect(), vec![eps("1/2"), eps("1/4")]);
    for id in ["identity8", "rotation-finite", "contraction-half"] {
        let sys = resolve(id).unwrap();
        for x in sys.default_samples() {
            for k in 0..=6 {
                assert!(sys.preimage_set(&x, k).unwrap().len() <= 1, "{id}");
            }
        }
        let est = estimate(&sys, id, &grid).unwrap();
        assert_eq!(est.entropy.value, 0.0, "{id}");
        assert_eq!(est.dimension.unwrap().slope, 0.0, "{id}");
    }
}
