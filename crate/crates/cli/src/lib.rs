//! Command-line front end: parsing, output formats, the identity audit and
//! subcommand dispatch.

pub mod audit;
pub mod commands;
pub mod emit;
pub mod error;
pub mod parse;
