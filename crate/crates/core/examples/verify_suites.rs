//! Runs every verification suite on the default corpus and prints one
//! summary per suite, followed by any failing or inconclusive assertion.

use std::time::Instant;

use ped::verify::{run_suite, Suite, VerifyConfig};

fn main() -> ped::Result<()> {
    let cfg = VerifyConfig::default();
    println!(
        "corpus version {}, systems: {}",
        cfg.corpus.version,
        cfg.corpus.systems.join(", ")
    );
    for suite in Suite::ALL {
        let start = Instant::now();
        let report = run_suite(suite, &cfg)?;
        print!("{report}");
        println!("  ({:.1?})", start.elapsed());
    }
    Ok(())
}
