//! One line per acceptance criterion, written straight to stderr so it shows
//! up in `cargo test` output. The test fails if any line is FAIL.

mod common;

use std::io::Write;
use std::time::Instant;

use common::*;
use ped::combinatorics::{
    count_candidates, exact_dominating_set, exact_independent_set, greedy_independent_set,
    max_separated, min_spanning, separation_graph, OrbitDistanceMatrix, SolverConfig, Want,
};
use ped::estimation::{estimate, s_entropy_curve, Estimate, EstimationGrid, Trend};
use ped::systems::{make_power, make_product, resolve, Point, ShiftSft, SystemModel};
use ped::verify::{run_suite, ConjugacyPair, Corpus, Status, Suite, VerifyConfig};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

const LN2: f64 = std::f64::consts::LN_2;

struct Ledger(Vec<(String, bool)>);

impl Ledger {
    fn record(&mut self, name: &str, ok: bool, detail: String) {
        let line = format!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        let _ = writeln!(std::io::stderr().lock(), "{line}");
        self.0.push((line, ok));
    }
}

fn grid(ns: std::ops::RangeInclusive<usize>, eps_list: &[&str]) -> EstimationGrid {
    EstimationGrid::new(ns.collect(), eps_list.iter().map(|e| eps(e)).collect())
}

fn dimension(e: &Estimate) -> f64 {
    e.dimension.as_ref().map_or(f64::NAN, |d| d.slope)
}

fn suite_all_pass(suite: Suite) -> (bool, String) {
    let rep = run_suite(suite, &VerifyConfig::default()).unwrap();
    let pass = rep.count(Status::Pass);
    (
        pass == rep.instances() && pass > 0,
        format!(
            "{} of {} pass, {} fail, {} inconclusive",
            pass,
            rep.instances(),
            rep.count(Status::Fail),
            rep.count(Status::Inconclusive)
        ),
    )
}

#[test]
fn acceptance() {
    let mut l = Ledger(Vec::new());

    // full 2-shift, n up to 14
    let sigma = resolve("shift:2").unwrap();
    let start = Instant::now();
    let est = estimate(&sigma, "shift:2", &grid(4..=14, &["1/2", "1/4"])).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let hs: Vec<f64> = est.entropy.per_eps.iter().map(|e| e.value).collect();
    l.record(
        "full 2-shift h_pre within 0.05 of log 2 at eps 1/2, 1/4 (n <= 14)",
        hs.len() == 2 && hs.iter().all(|h| (h - LN2).abs() <= 0.05),
        format!("h = {hs:.4?}, log 2 = {LN2:.4}"),
    );
    l.record(
        "full 2-shift estimate runtime under 60 s",
        secs < 60.0,
        format!("{secs:.2} s"),
    );
    let d = dimension(&est);
    l.record(
        "full 2-shift dimension in [0.9, 1.1]",
        (0.9..=1.1).contains(&d),
        format!("D = {d:.4}"),
    );

    // bounded preimage systems
    for id in ["identity8", "rotation-finite", "contraction-half"] {
        let e = estimate(&resolve(id).unwrap(), id, &grid(1..=8, &["1/2", "1/4"])).unwrap();
        let d = dimension(&e);
        l.record(
            &format!("{id} h_pre = 0 and dimension = 0 exactly"),
            e.entropy.value == 0.0 && d == 0.0,
            format!("h = {}, D = {}", e.entropy.value, d),
        );
    }

    // golden mean against the transfer-matrix spectral radius
    let oracle = log_spectral_radius(ShiftSft::golden_mean().transitions());
    let e = estimate(
        &SystemModel::golden_mean(),
        "golden-mean",
        &grid(4..=14, &["1/2", "1/4"]),
    )
    .unwrap();
    let hs: Vec<f64> = e.entropy.per_eps.iter().map(|e| e.value).collect();
    l.record(
        "golden-mean h_pre within 0.05 of log phi",
        !hs.is_empty() && hs.iter().all(|h| (h - oracle).abs() <= 0.05),
        format!("h = {hs:.5?}, oracle = {oracle:.5}"),
    );

    // products
    let square = make_product(sigma.clone(), sigma.clone());
    let cfg = SolverConfig::default();
    let x = Point::symbolic(vec![], vec![0]).unwrap();
    let half = eps("1/2");
    let r1 = count_candidates(
        &sigma,
        &sigma.preimage_set(&x, 3).unwrap(),
        3,
        half,
        Want::Separated,
        &cfg,
    )
    .unwrap()
    .r_exact()
    .unwrap();
    let xy = Point::pair(x.clone(), x.clone());
    let r = count_candidates(
        &square,
        &square.preimage_set(&xy, 3).unwrap(),
        3,
        half,
        Want::Separated,
        &cfg,
    )
    .unwrap()
    .r_exact()
    .unwrap();
    l.record(
        "sigma x sigma at n = k = 3, eps 1/2: r = 64 = r1 r2",
        r == 64 && r == r1 * r1,
        format!("r = {r}, r1 = r2 = {r1}"),
    );
    let e = estimate(&square, "shift:2*shift:2", &grid(2..=6, &["1/2"])).unwrap();
    l.record(
        "sigma x sigma h_pre within 0.1 of 2 log 2",
        (e.entropy.value - 2.0 * LN2).abs() <= 0.1,
        format!("h = {:.4}, 2 log 2 = {:.4}", e.entropy.value, 2.0 * LN2),
    );

    // sandwich
    let (ok, detail) = suite_all_pass(Suite::Sandwich);
    l.record(
        "sandwich s(n,eps) <= r(n,eps) <= s(n,eps/2) on the whole corpus",
        ok,
        detail,
    );

    // powers
    let (ok, detail) = suite_all_pass(Suite::Power);
    l.record(
        "power inequality r(n,(T^2)^-k x,T^2) <= r(2n,T^-2k x,T) on corpus cells n,k <= 4",
        ok,
        detail,
    );
    let d1 = dimension(&estimate(&sigma, "shift:2", &grid(3..=10, &["1/2"])).unwrap());
    let sq = make_power(sigma.clone(), 2).unwrap();
    let d2 = dimension(&estimate(&sq, "shift:2^2", &grid(2..=5, &["1/2"])).unwrap());
    l.record(
        "dimensions of sigma and sigma^2 within 0.15",
        (d1 - d2).abs() <= 0.15,
        format!("D = {d1:.4}, {d2:.4}"),
    );

    // conjugacy by symbol swap, every corpus cell
    let SystemModel::Shift(sft) = &sigma else {
        unreachable!()
    };
    let swap = ConjugacyPair::symbol_swap(sft, 0, 1).unwrap();
    let corpus = Corpus::default();
    let (mut equal, mut total) = (0, 0);
    for cell in corpus.cells_for("shift:2", &sigma) {
        let y = swap.forward(&cell.x).unwrap();
        let a = count_candidates(
            &sigma,
            &sigma.preimage_set(&cell.x, cell.k).unwrap(),
            cell.n,
            cell.eps,
            Want::Separated,
            &cfg,
        )
        .unwrap();
        let b = count_candidates(
            &sigma,
            &sigma.preimage_set(&y, cell.k).unwrap(),
            cell.n,
            cell.eps,
            Want::Separated,
            &cfg,
        )
        .unwrap();
        total += 1;
        if a.r_exact().is_some() && a.r_exact() == b.r_exact() {
            equal += 1;
        }
    }
    let (ok, detail) = suite_all_pass(Suite::Conjugacy);
    l.record(
        "symbol swap on the full 2-shift gives equal r at every corpus cell",
        total > 0 && equal == total && ok,
        format!("{equal} of {total} cells equal; conjugacy suite {detail}"),
    );

    // exact solvers against subset enumeration
    let (mut agree, mut instances, mut greedy_ok) = (0, 0, true);
    let mut check = |d: &OrbitDistanceMatrix, e| {
        let r = max_separated(d, e, &cfg).r_exact();
        let s = min_spanning(d, e, &cfg).s_exact();
        let g = separation_graph(d, e);
        let mis = exact_independent_set(&g, None).best.len();
        let dom = exact_dominating_set(&g, None).best.len();
        let (br, bs) = (brute_separated(d, e), brute_spanning(d, e));
        instances += 1;
        if r == Some(br as u64) && s == Some(bs as u64) && mis == br && dom == bs {
            agree += 1;
        }
        greedy_ok &= greedy_independent_set(&g).len() <= br;
    };
    for (_, sys) in corpus.models().unwrap() {
        for x in corpus.samples(&sys) {
            for &k in &corpus.ks {
                let pre = sys.preimage_set(&x, k).unwrap();
                if pre.is_empty() || pre.len() > 16 {
                    continue;
                }
                for &n in &corpus.ns {
                    let d = OrbitDistanceMatrix::build(&sys, pre.clone(), n).unwrap();
                    for &e in &corpus.eps {
                        check(&d, e);
                    }
                }
            }
        }
    }
    let mut runner = TestRunner::deterministic();
    let random = (1usize..=16).prop_flat_map(|n| {
        (proptest::collection::vec(0u8..=16, n * n), 1u32..=3).prop_map(move |(v, p)| (n, v, p))
    });
    for _ in 0..400 {
        let (n, v, p) = random.new_tree(&mut runner).unwrap().current();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            0.0
                        } else {
                            f64::from(v[i.min(j) * n + i.max(j)]) / 8.0
                        }
                    })
                    .collect()
            })
            .collect();
        let d = OrbitDistanceMatrix::from_entries(1, rows).unwrap();
        check(&d, ped::Dyadic::inverse_power_of_two(p));
    }
    l.record(
        "exact MIS and minimum spanning match subset enumeration on all |K| <= 16 instances, greedy <= exact",
        agree == instances && greedy_ok,
        format!("{agree} of {instances} instances agree, greedy bound {}", if greedy_ok { "holds" } else { "violated" }),
    );

    // s-curve classes
    let curve = s_entropy_curve(
        &sigma,
        &grid(4..=12, &["1/2"]).with_s_values(vec![0.5, 1.0, 2.0]),
    )
    .unwrap();
    let class = |s: f64| curve.iter().find(|p| p.s == s).map(|p| p.class);
    l.record(
        "s-curve of the full 2-shift: 0.5 increasing, 1 finite, 2 decreasing",
        class(0.5) == Some(Trend::Increasing)
            && class(1.0) == Some(Trend::Finite)
            && class(2.0) == Some(Trend::Decreasing),
        format!("{:?} {:?} {:?}", class(0.5), class(1.0), class(2.0)),
    );

    let failed: Vec<&String> = l.0.iter().filter(|(_, ok)| !ok).map(|(s, _)| s).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:#?}");
}
