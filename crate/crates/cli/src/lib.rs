//! Command-line front end: the text format, its evaluator and the subcommands.

pub mod commands;
pub mod dsl;
pub mod eval;
