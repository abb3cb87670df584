//! File formats and report plumbing behind the `codepair` binary.

pub mod formats;
pub mod report;
