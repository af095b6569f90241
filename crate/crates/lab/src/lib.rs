//! Verification suites and report tooling over the p-subgroup category
//! toolkit: a catalog of desk-scale groups, per-statement checks, a
//! deterministic suite runner, and emitters for JSON, text, and CSV.

pub mod catalog;
pub mod checks;
pub mod config;
pub mod report;
pub mod suite;
