//! Command-line front end for `pragpal-core`: JSON traces, SVG rendering
//! and trace statistics.

pub mod cli;
pub mod render;
pub mod stats;
pub mod trace;

pub use pragpal_core as core;
pub use trace::{TraceFile, SCHEMA_VERSION};
