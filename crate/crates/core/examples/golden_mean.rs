//! Golden-mean shift: preimage entropy against log of the golden ratio.
//!
//! The expected value comes from the largest eigenvalue of the transition
//! matrix [[1,1],[1,0]]; counts of preimages of 0^∞ are Fibonacci numbers.

use ped::estimation::{estimate, EstimationGrid};
use ped::systems::{resolve, Point};

fn main() -> ped::Result<()> {
    let sys = resolve("golden-mean")?;
    let zero = Point::symbolic(vec![], vec![0])?;
    for k in 1..=8 {
        print!("{} ", sys.preimage_set(&zero, k)?.len());
    }
    println!("<- |T^-k(0^inf)|, k = 1..8");

    let grid = EstimationGrid::new((4..=14).collect(), vec!["1/2".parse()?, "1/4".parse()?]);
    let est = estimate(&sys, "golden-mean", &grid)?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    for e in &est.entropy.per_eps {
        println!("eps {}: h_pre = {:.5}", e.eps, e.value);
    }
    println!("log phi     = {:.5}", phi.ln());
    if let Some(d) = &est.dimension {
        println!("dimension   = {:.4}", d.slope);
    }
    Ok(())
}
