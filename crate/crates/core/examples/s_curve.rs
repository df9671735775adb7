//! The s-entropy curve of the full 2-shift crosses from infinite to zero at
//! s = 1, which is the preimage entropy dimension.

use ped::estimation::{s_entropy_curve, EstimationGrid};
use ped::systems::resolve;

fn main() -> ped::Result<()> {
    let sys = resolve("shift:2")?;
    let grid = EstimationGrid::new((4..=12).collect(), vec!["1/2".parse()?])
        .with_s_values(vec![0.5, 0.75, 1.0, 1.25, 1.5, 2.0]);
    for p in s_entropy_curve(&sys, &grid)? {
        println!("s = {:<5} a_N/N^s = {:>8.4}  {}", p.s, p.value, p.class);
    }
    Ok(())
}
