//! Library surface of the `rsel` tool, shared by the binary and the tests.

pub mod bench;
pub mod dataset;
pub mod error;
pub mod run;
