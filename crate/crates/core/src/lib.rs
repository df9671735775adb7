//! Preimage entropy and preimage entropy dimension of concrete dynamical
//! systems.
//!
//! The crate enumerates preimage sets `T^{-k}(x)` exactly, counts maximal
//! `(n, ε)`-separated and minimal `(n, ε)`-spanning subsets of them under the
//! Bowen metric, turns those counts into finite-scale estimates of the
//! preimage entropy and its dimension, and checks the inequalities relating
//! these quantities on a fixed corpus of small instances.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --release -p ped --example full_shift_entropy
//! cargo run --release -p ped --example verify_suites
//! ```

pub mod cli;
pub mod combinatorics;
pub mod eps;
pub mod error;
pub mod estimation;
pub mod systems;
pub mod verify;

pub use eps::Dyadic;
pub use error::{Error, Result};
