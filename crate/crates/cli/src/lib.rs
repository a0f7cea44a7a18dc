//! Library side of the `evmine` command: output formats and the self-test.

pub mod output;
pub mod selftest;
