//! Preimage estimates next to topological estimates from a sample of the
//! whole space, for a few systems, written as CSV.

use ped::estimation::{estimate, estimate_topological_s_entropy, write_csv, EstimationGrid};
use ped::systems::resolve;

fn main() -> ped::Result<()> {
    let grid = EstimationGrid::new((2..=7).collect(), vec!["1/2".parse()?]);
    println!("{:<14} {:>8} {:>8}", "system", "h_pre", "h_top");
    for id in ["identity8", "golden-mean", "shift:2", "shift:3"] {
        let sys = resolve(id)?;
        let pre = estimate(&sys, id, &grid)?;
        let top = estimate_topological_s_entropy(&sys, id, &grid, None)?;
        println!(
            "{:<14} {:>8.4} {:>8.4}",
            id, pre.entropy.value, top.entropy.value
        );
        if id == "golden-mean" {
            let mut buf = Vec::new();
            write_csv(&pre, &mut buf)?;
            let text = String::from_utf8_lossy(&buf);
            for line in text.lines().take(4) {
                println!("  {line}");
            }
        }
    }
    Ok(())
}
