//! Exact checks of the structural relations satisfied by separated and
//! spanning counts on a fixed, versioned corpus, plus estimator-level
//! relations between dimensions within a tolerance τ.

mod conjugacy;
mod corpus;
mod report;
mod suites;

pub use conjugacy::ConjugacyPair;
pub use corpus::{Cell, Corpus, CORPUS_VERSION};
pub use report::{Assertion, Status, VerificationReport, Witness};
pub use suites::{run_all, run_suite, Suite, VerifyConfig, MAX_EXACT_CANDIDATES};
