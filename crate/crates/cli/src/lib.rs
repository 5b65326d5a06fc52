//! Verification harness and file tools for truncated FI^m-modules.

pub mod compute;
pub mod corpus;
pub mod error;
pub mod io;
pub mod report;
pub mod suites;
