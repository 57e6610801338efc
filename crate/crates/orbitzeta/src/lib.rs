//! Command-line front end for `orbitzeta-core`: argument parsing, JSON and
//! CSV output, and the verification suite.

pub mod cli;
pub mod parse;
pub mod report;
pub mod verify;
