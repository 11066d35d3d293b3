//! Config files, transcript files and the command-line driver for
//! `genco-core`.

pub mod cli;
pub mod config;
pub mod run;
pub mod transcript;
