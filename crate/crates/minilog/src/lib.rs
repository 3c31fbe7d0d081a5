//! Command line and HTTP front ends over `minilog-core`.

pub mod cli;
pub mod server;
