//! Products: separated counts multiply on a worked instance, and the
//! entropy of σ×σ is twice that of σ.

use ped::combinatorics::{count_candidates, SolverConfig, Want};
use ped::estimation::{estimate, EstimationGrid};
use ped::systems::{make_product, resolve, Point};

fn main() -> ped::Result<()> {
    let shift = resolve("shift:2")?;
    let square = make_product(shift.clone(), shift.clone());
    let (n, k) = (3, 3);
    let eps = "1/2".parse()?;
    let cfg = SolverConfig::default();

    let x = Point::symbolic(vec![], vec![0])?;
    let pre = shift.preimage_set(&x, k)?;
    let r1 = count_candidates(&shift, &pre, n, eps, Want::Separated, &cfg)?.r_exact();
    let xy = Point::pair(x.clone(), x);
    let pre2 = square.preimage_set(&xy, k)?;
    let r = count_candidates(&square, &pre2, n, eps, Want::Separated, &cfg)?.r_exact();
    println!("n = k = 3, eps = 1/2: r(sigma) = {r1:?}, r(sigma x sigma) = {r:?}");

    let grid = EstimationGrid::new((2..=6).collect(), vec![eps]);
    let est = estimate(&square, "shift:2*shift:2", &grid)?;
    println!(
        "h_pre(sigma x sigma) = {:.4}, 2 log 2 = {:.4}",
        est.entropy.value,
        2.0 * std::f64::consts::LN_2
    );
    Ok(())
}
