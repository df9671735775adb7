//! Systems whose preimage sets stay bounded: a permutation of 8 points, a
//! finite rotation and a contraction. Preimage entropy and dimension are 0.

use ped::estimation::{estimate, EstimationGrid};
use ped::systems::resolve;

fn main() -> ped::Result<()> {
    let grid = EstimationGrid::new((1..=8).collect(), vec!["1/2".parse()?, "1/4".parse()?]);
    println!("{:<18} {:>8} {:>10}", "system", "h_pre", "dimension");
    for id in ["identity8", "rotation-finite", "contraction-half"] {
        let sys = resolve(id)?;
        let est = estimate(&sys, id, &grid)?;
        let dim = est.dimension.as_ref().map_or(f64::NAN, |d| d.slope);
        println!("{:<18} {:>8.4} {:>10.4}", id, est.entropy.value, dim);
    }
    Ok(())
}
