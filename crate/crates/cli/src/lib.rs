//! Fixture files, configuration, corpus verification and report output
//! behind the `linkcolor` binary.

pub mod config;
pub mod corpus;
pub mod fixtures;
pub mod report;
