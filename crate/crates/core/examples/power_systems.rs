//! Powers: windows of T^2 compared with doubled windows of T, and the
//! dimension of σ against that of σ^2.

use ped::combinatorics::{count_candidates, SolverConfig, Want};
use ped::estimation::{estimate, EstimationGrid};
use ped::systems::{make_power, resolve, Point};

fn main() -> ped::Result<()> {
    let base = resolve("shift:2")?;
    let square = make_power(base.clone(), 2)?;
    let cfg = SolverConfig::default();
    let eps = "1/2".parse()?;
    let x = Point::symbolic(vec![1], vec![0])?;

    println!(
        "{:>2} {:>2} {:>12} {:>12}",
        "n", "k", "r(n, T^2)", "r(2n, T)"
    );
    for n in 1..=4 {
        for k in 1..=4 {
            let pre = square.preimage_set(&x, k)?;
            let lhs = count_candidates(&square, &pre, n, eps, Want::Separated, &cfg)?;
            let pre = base.preimage_set(&x, 2 * k)?;
            let rhs = count_candidates(&base, &pre, 2 * n, eps, Want::Separated, &cfg)?;
            println!(
                "{:>2} {:>2} {:>12?} {:>12?}",
                n,
                k,
                lhs.r_exact(),
                rhs.r_exact()
            );
        }
    }

    let grid = EstimationGrid::new((3..=10).collect(), vec![eps]);
    let d1 = estimate(&base, "shift:2", &grid)?
        .dimension
        .map(|d| d.slope);
    let grid = EstimationGrid::new((2..=5).collect(), vec![eps]);
    let d2 = estimate(&square, "shift:2^2", &grid)?
        .dimension
        .map(|d| d.slope);
    println!("dimension: sigma {d1:.4?}, sigma^2 {d2:.4?}");
    Ok(())
}
