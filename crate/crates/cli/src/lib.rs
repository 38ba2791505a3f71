//! Batch driver for the verification suites and enumeration tables.

pub mod config;
pub mod enumerate;
pub mod report;
pub mod suites;

pub use config::{Format, Overrides, SuiteConfig};
pub use report::{Case, Report, Status, Summary};
pub use suites::{run_suite, SuiteName};
