//! Plumbing behind the `linindel` binary: configuration files, code
//! descriptions, word formats, and the experiment runner.

pub mod codefile;
pub mod config;
pub mod experiment;
pub mod textio;
