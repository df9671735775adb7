//! Exact separated and spanning counts on a small orbit distance matrix,
//! and the sandwich s(ε) ≤ r(ε) ≤ s(ε/2) on a preimage set.

use ped::combinatorics::{
    count_candidates, greedy_independent_set, max_separated, min_spanning, separation_graph,
    OrbitDistanceMatrix, SolverConfig, Want,
};
use ped::systems::{resolve, Point};

fn main() -> ped::Result<()> {
    let cfg = SolverConfig::default();
    let pts: Vec<f64> = vec![0.0, 0.2, 0.45, 0.5, 0.9];
    let rows = pts
        .iter()
        .map(|a| pts.iter().map(|b| (a - b).abs()).collect())
        .collect();
    let d = OrbitDistanceMatrix::from_entries(1, rows)?;
    let eps = "1/4".parse()?;
    let g = separation_graph(&d, eps);
    println!("edges with d <= 1/4: {}", g.edge_count());
    println!("greedy separated set: {:?}", greedy_independent_set(&g));
    println!(
        "r = {:?}, s = {:?}",
        max_separated(&d, eps, &cfg).r_exact(),
        min_spanning(&d, eps, &cfg).s_exact()
    );

    let sys = resolve("golden-mean")?;
    let x = Point::symbolic(vec![], vec![0])?;
    let pre = sys.preimage_set(&x, 6)?;
    for n in 1..=4 {
        let e = "1/2".parse()?;
        let at = count_candidates(&sys, &pre, n, e, Want::Both, &cfg)?;
        let half = count_candidates(&sys, &pre, n, e.half(), Want::Spanning, &cfg)?;
        println!(
            "n {n}: s(1/2) = {:?} <= r(1/2) = {:?} <= s(1/4) = {:?}",
            at.s_exact(),
            at.r_exact(),
            half.s_exact()
        );
    }
    Ok(())
}
