//! Command-line front end for `kcone-core`: JSON configs, the built-in
//! catalog, output formats and the optional partition-table cache.

pub mod app;
pub mod cache;
pub mod catalog;
pub mod config;
pub mod output;

pub use app::{run, Outcome};
