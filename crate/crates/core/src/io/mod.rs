//! File formats and text output.

pub mod fasta;
pub mod matrix;
pub mod render;
pub mod report;
