//! Report model and suite runners behind the `schwarz` binary.

pub mod report;
pub mod suites;

pub use report::{all_passed, emit_report, CheckReport, Format, Status};
pub use suites::{run_suite, run_suites, Config, Suite};
