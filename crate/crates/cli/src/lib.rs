//! Library side of the `knotconc` command-line tool.

pub mod commands;
pub mod poly;
