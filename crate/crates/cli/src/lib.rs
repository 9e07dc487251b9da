//! Command-line front end for `tropint`: reads polynomial systems from JSON,
//! runs one computation and writes a JSON report, plus SVG for plane curves.

pub mod commands;
pub mod error;
pub mod report;
pub mod svg;
pub mod system;
