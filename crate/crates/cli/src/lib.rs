//! Library surface of the `entdim` binary: file formats and command
//! implementations, reused by the integration and acceptance suites.

pub mod commands;
pub mod formats;
