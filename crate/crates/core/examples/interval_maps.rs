//! The tent map and the doubling map on the circle, over short windows.
//! Preimage sets grow like 2^k, so windows stay small here.

use ped::estimation::{estimate, EstimationGrid};
use ped::systems::{resolve, Point};

fn main() -> ped::Result<()> {
    let tent = resolve("tent")?;
    let pre = tent.preimage_set(&Point::real(0.5), 3)?;
    println!("tent^-3(1/2) has {} points", pre.len());

    for id in ["tent", "doubling"] {
        let sys = resolve(id)?;
        let grid = EstimationGrid::new((2..=4).collect(), vec!["1/4".parse()?]);
        let est = estimate(&sys, id, &grid)?;
        println!(
            "{id}: h_pre at eps 1/4 = {:.4} (log 2 = {:.4})",
            est.entropy.value,
            std::f64::consts::LN_2
        );
    }
    Ok(())
}
