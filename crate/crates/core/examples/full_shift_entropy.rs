//! Preimage entropy and dimension of the full 2-shift over n = 4..14.
//!
//! Expected: h_pre close to log 2 at both scales, dimension close to 1.

use std::time::Instant;

use ped::estimation::{estimate, EstimationGrid};
use ped::systems::resolve;
use ped::Dyadic;

fn main() -> ped::Result<()> {
    let sys = resolve("shift:2")?;
    let eps: Vec<Dyadic> = vec!["1/2".parse()?, "1/4".parse()?];
    let grid = EstimationGrid::new((4..=14).collect(), eps);

    let start = Instant::now();
    let est = estimate(&sys, "shift:2", &grid)?;
    let elapsed = start.elapsed();

    println!("{:>6} {:>4} {:>8} {:>10}", "eps", "n", "best_k", "log r");
    for row in est.series.sup.iter() {
        for rec in row.iter().flatten() {
            println!(
                "{:>6} {:>4} {:>8} {:>10.4}",
                rec.eps, rec.n, rec.best_k, rec.log_r
            );
        }
    }
    for e in &est.entropy.per_eps {
        println!(
            "eps {}: h_pre = {:.4} (log 2 = {:.4})",
            e.eps,
            e.value,
            std::f64::consts::LN_2
        );
    }
    if let Some(d) = &est.dimension {
        println!("dimension = {:.4} (spread {:.4})", d.slope, d.spread);
    }
    println!("elapsed {:.2?}", elapsed);
    Ok(())
}
