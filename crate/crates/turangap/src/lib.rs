//! Command-line front end for `turangap-core`: graph6 and edge-list files, JSON and
//! CSV reports, and the experiment pipelines behind the `turangap` binary.

pub mod cli;
pub mod experiment;
pub mod formats;
pub mod report;
pub mod spec;
