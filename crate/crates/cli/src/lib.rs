//! Command-line front end for `lumpcheck-core`: one subcommand per check,
//! each producing a JSON [`report::RunReport`].

pub mod commands;
pub mod report;
