//! File formats, reports and the command-line front end for
//! [`catshrink_core`].
//!
//! The CLI is a thin adapter: every number it prints comes straight from the
//! corresponding `catshrink_core` call.

pub mod cli;
pub mod input;
pub mod parallel;
pub mod report;

pub use cli::run;
