//! File formats, reports, a thread-pool executor and the `invforms` command
//! line on top of [`invforms_core`].

pub mod cli;
pub mod format;
pub mod lemma;
pub mod parallel;
pub mod report;

pub use invforms_core;
