//! Swapping the symbols of the full 2-shift is a conjugacy; separated
//! counts of corresponding preimage sets agree exactly.

use ped::combinatorics::{count_candidates, SolverConfig, Want};
use ped::systems::{Point, ShiftSft, SystemModel};
use ped::verify::ConjugacyPair;

fn main() -> ped::Result<()> {
    let sft = ShiftSft::full(2)?;
    let pair = ConjugacyPair::symbol_swap(&sft, 0, 1)?;
    let sys = SystemModel::Shift(sft);
    let cfg = SolverConfig::default();
    let x = Point::symbolic(vec![0, 1], vec![0])?;
    let y = pair.forward(&x)?;
    println!("x = {x}, h(x) = {y}");
    for eps in ["1/2", "1/4"] {
        let eps = eps.parse()?;
        for (n, k) in [(1, 1), (2, 3), (4, 4)] {
            let a = count_candidates(
                &sys,
                &sys.preimage_set(&x, k)?,
                n,
                eps,
                Want::Separated,
                &cfg,
            )?;
            let b = count_candidates(
                &sys,
                &sys.preimage_set(&y, k)?,
                n,
                eps,
                Want::Separated,
                &cfg,
            )?;
            println!(
                "eps {eps} n {n} k {k}: r = {:?} / {:?}",
                a.r_exact(),
                b.r_exact()
            );
        }
    }
    Ok(())
}
