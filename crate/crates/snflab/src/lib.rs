//! Generation, Smith normal forms and formula cross-checks for combinatorial
//! incidence matrices: file formats, cache, reports, sweeps and the CLI.

pub mod cache;
pub mod cli;
pub mod error;
pub mod harness;
pub mod limits;
pub mod matrix_io;
pub mod report;
pub mod sweep;

pub use cli::run;
pub use error::{LabError, LabResult};
pub use harness::{cross_check, CrossCheckReport, Harness, Verdict};
