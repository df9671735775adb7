//! Builds a system from a JSON document, writes it back out and estimates
//! its preimage entropy. The document describes the shift on {0,1,2} that
//! forbids the word 22.

use ped::estimation::{estimate, EstimationGrid};
use ped::systems::{from_json, to_json};

const DOC: &str = r#"{
  "schema": 1,
  "variant": "shift_sft",
  "transitions": [[1, 1, 1], [1, 1, 1], [1, 1, 0]]
}"#;

fn main() -> ped::Result<()> {
    let sys = from_json(DOC)?;
    println!("{}", to_json(&sys));
    let grid = EstimationGrid::new((3..=9).collect(), vec!["1/2".parse()?]);
    let est = estimate(&sys, "no-22", &grid)?;
    // words avoiding 22 satisfy w(n) = 2 w(n-1) + 2 w(n-2), growth rate 1 + sqrt(3)
    println!(
        "h_pre = {:.4}, log(1 + sqrt 3) = {:.4}",
        est.entropy.value,
        (1.0 + 3f64.sqrt()).ln()
    );
    Ok(())
}
