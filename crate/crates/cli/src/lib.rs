//! Corpus runner and single-instance analyzer for the `extalg` command.

pub mod corpus;
pub mod error;
pub mod eval;
pub mod instance;
pub mod laws;
pub mod report;
pub mod suite;

pub use error::{HarnessError, ParseError};
pub use report::SuiteReport;
pub use suite::{analyze, poset, run_suite, SuiteConfig};
