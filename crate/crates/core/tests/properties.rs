mod common;

use common::*;
use ped::combinatorics::{count_candidates, SolverConfig, Want};
use ped::systems::{make_power, make_product, resolve, Point, SystemModel};
use ped::verify::ConjugacyPair;
use ped::Dyadic;
use proptest::prelude::*;

fn full_shift_point() -> impl Strategy<Value = Point> {
    (
        prop::collection::vec(0u8..2, 0..6),
        prop::collection::vec(0u8..2, 1..4),
    )
        .prop_map(|(pre, per)| Point::symbolic(pre, per).unwrap())
}

fn golden_point() -> impl Strategy<Value = Point> {
    full_shift_point().prop_filter("admissible", |p| {
        resolve("golden-mean").unwrap().contains(p)
    })
}

fn keys(points: &[Point]) -> Vec<String> {
    let mut v: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}

fn scale() -> impl Strategy<Value = Dyadic> {
    (1u32..=4).prop_map(Dyadic::inverse_power_of_two)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bowen_distance_is_a_metric(x in full_shift_point(), y in full_shift_point(), z in full_shift_point(), n in 1usize..6) {
        let sys = resolve("shift:2").unwrap();
        let dxy = sys.bowen_distance(&x, &y, n).unwrap();
        prop_assert_eq!(sys.bowen_distance(&x, &x, n).unwrap(), 0.0);
        prop_assert_eq!(dxy, sys.bowen_distance(&y, &x, n).unwrap());
        let via = sys.bowen_distance(&x, &z, n).unwrap() + sys.bowen_distance(&z, &y, n).unwrap();
        prop_assert!(dxy <= via + 1e-12);
        prop_assert!((dxy - naive_bowen_symbolic(symbolic(&x), symbolic(&y), n, 1)).abs() < 1e-12);
    }

    #[test]
    fn bowen_distance_grows_with_window(x in golden_point(), y in golden_point(), n in 1usize..8) {
        let sys = resolve("golden-mean").unwrap();
        prop_assert!(sys.bowen_distance(&x, &y, n).unwrap() <= sys.bowen_distance(&x, &y, n + 1).unwrap());
    }

    #[test]
    fn product_distance_is_coordinate_max(a in full_shift_point(), b in golden_point(), c in full_shift_point(), d in golden_point(), n in 1usize..5) {
        let s = resolve("shift:2").unwrap();
        let g = resolve("golden-mean").unwrap();
        let p = make_product(s.clone(), g.clone());
        let lhs = p.bowen_distance(&Point::pair(a.clone(), b.clone()), &Point::pair(c.clone(), d.clone()), n).unwrap();
        let rhs = s.bowen_distance(&a, &c, n).unwrap().max(g.bowen_distance(&b, &d, n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn preimages_map_back(x in golden_point(), k in 0usize..7) {
        let sys = resolve("golden-mean").unwrap();
        for y in sys.preimage_set(&x, k).unwrap() {
            prop_assert_eq!(sys.iterate(&y, k).unwrap().to_string(), x.to_string());
        }
    }

    #[test]
    fn power_preimages_are_doubled_depth_preimages(x in full_shift_point(), k in 0usize..4) {
        let base = resolve("shift:2").unwrap();
        let sq = make_power(base.clone(), 2).unwrap();
        prop_assert_eq!(keys(&sq.preimage_set(&x, k).unwrap()), keys(&base.preimage_set(&x, 2 * k).unwrap()));
        let pre = base.preimage_set(&x, 2 * k).unwrap();
        if pre.len() >= 2 {
            for n in 1..4 {
                prop_assert_eq!(sq.bowen_distance(&pre[0], &pre[1], n).unwrap(),
                    naive_bowen_symbolic(symbolic(&pre[0]), symbolic(&pre[1]), n, 2));
            }
        }
    }

    #[test]
    fn separated_counts_are_monotone(x in golden_point(), k in 0usize..8, n in 1usize..5, e in scale()) {
        let sys = resolve("golden-mean").unwrap();
        let cfg = SolverConfig::default();
        let pre = sys.preimage_set(&x, k).unwrap();
        let r = |n, e| count_candidates(&sys, &pre, n, e, Want::Separated, &cfg).unwrap().r_exact().unwrap();
        let base = r(n, e);
        prop_assert!(base <= r(n + 1, e));
        prop_assert!(base <= r(n, e.half()));
        prop_assert!(base as usize <= pre.len());
    }

    #[test]
    fn sandwich_on_random_preimage_sets(x in full_shift_point(), k in 0usize..8, n in 1usize..5, e in scale()) {
        let sys = resolve("shift:2").unwrap();
        let cfg = SolverConfig::default();
        let pre = sys.preimage_set(&x, k).unwrap();
        let at = count_candidates(&sys, &pre, n, e, Want::Both, &cfg).unwrap();
        let half = count_candidates(&sys, &pre, n, e.half(), Want::Spanning, &cfg).unwrap();
        let (s, r, s2) = (at.s_exact().unwrap(), at.r_exact().unwrap(), half.s_exact().unwrap());
        prop_assert!(s <= r && r <= s2, "{} {} {}", s, r, s2);
    }

    #[test]
    fn symbol_swap_preserves_counts(x in full_shift_point(), k in 0usize..7, n in 1usize..5, e in scale()) {
        let sys = resolve("shift:2").unwrap();
        let SystemModel::Shift(sft) = &sys else { unreachable!() };
        let h = ConjugacyPair::symbol_swap(sft, 0, 1).unwrap();
        let cfg = SolverConfig::default();
        let y = h.forward(&x).unwrap();
        let a = count_candidates(&sys, &sys.preimage_set(&x, k).unwrap(), n, e, Want::Both, &cfg).unwrap();
        let b = count_candidates(&sys, &sys.preimage_set(&y, k).unwrap(), n, e, Want::Both, &cfg).unwrap();
        prop_assert_eq!(a.r_exact(), b.r_exact());
        prop_assert_eq!(a.s_exact(), b.s_exact());
    }

    #[test]
    fn dyadic_round_trip(num in 1u64..64, pow in 0u32..20) {
        let d = Dyadic::new(num, pow).unwrap();
        let back: Dyadic = d.to_string().parse().unwrap();
        prop_assert_eq!(back.value(), d.value());
        prop_assert_eq!(d.half().value(), d.value() / 2.0);
    }

    #[test]
    fn tent_preimages_map_back(x in 0u32..=64, k in 0usize..6) {
        let sys = resolve("tent").unwrap();
        let x = Point::real(f64::from(x) / 64.0);
        let pre = sys.preimage_set(&x, k).unwrap();
        prop_assert!(pre.len() <= 1 << k);
        for y in pre {
            let Point::Real { x: back } = sys.iterate(&y, k).unwrap() else { unreachable!() };
            let Point::Real { x: want } = x else { unreachable!() };
            prop_assert!((back - want).abs() < 1e-9);
        }
    }
}
