//! Command-line front end for the depth-zero toolkit.

pub mod commands;
pub mod report;
