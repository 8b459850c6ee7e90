//! File formats, reports, mesh export and the command line for cubeiso.

pub mod acceptance;
pub mod cli;
pub mod format;
pub mod mesh;
pub mod parallel;
pub mod report;
