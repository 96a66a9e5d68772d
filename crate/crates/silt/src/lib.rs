//! File formats, caching, threaded exploration and the command-line front end
//! for `silt-core`.

pub mod cache;
pub mod cli;
pub mod dot;
pub mod formats;
pub mod parallel;
pub mod run;
pub mod verify;

pub use silt_core as core;
