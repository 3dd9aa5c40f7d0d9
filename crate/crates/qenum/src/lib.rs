//! File formats, the built-in code corpus and the command-line front end for
//! `qenum-core`.

pub mod cli;
pub mod codefile;
pub mod corpus;
pub mod polytext;
pub mod suite;

pub use qenum_core as core;
